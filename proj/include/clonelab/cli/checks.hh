#pragma once

#include <clonelab/cli/problem_file.hh>
#include <clonelab/universe.hh>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clonelab::cli
{
    struct CheckOptions
    {
        const ProblemFile * file = nullptr;
        std::uint64_t seed = 0;
        std::size_t budget = default_budget;

        // pol-inv
        std::string gens;
        unsigned arity = 0; // 0: both 1 and 2
        std::size_t random = 25;

        // translation-lattice: a finite group from the file, else Z_modulus
        std::string group;
        std::int64_t modulus = 12;

        // covering
        std::vector<Element> subset{0, 1};
        std::size_t universe = 3;
        unsigned cap = 2;
        std::size_t samples = 50;
    };

    struct CheckReport
    {
        std::string name;
        bool pass = true;
        nlohmann::ordered_json details = nlohmann::ordered_json::object();
        /// Present on FAIL: enough to re-run the failing case with member or close.
        nlohmann::ordered_json certificate;
        std::vector<std::string> lines;
        /// Hasse diagram of the clones the check compared, if it compared any.
        std::optional<std::string> dot;

        [[nodiscard]] auto to_json() const -> nlohmann::ordered_json;
        [[nodiscard]] auto to_text() const -> std::string;
    };

    [[nodiscard]] auto check_names() -> const std::vector<std::string> &;

    /// Throws InvalidArgument for an unknown name, BudgetExceeded if the budget
    /// runs out.
    [[nodiscard]] auto run_check(const std::string & name, const CheckOptions & options) -> CheckReport;

    [[nodiscard]] auto table_json(const std::vector<Element> & entries) -> nlohmann::ordered_json;
    [[nodiscard]] auto format_table(const std::vector<Element> & entries) -> std::string;
    [[nodiscard]] auto format_domain(const std::vector<Tuple> & domain) -> std::string;
}
