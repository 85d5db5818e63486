#pragma once

#include <clonelab/universe.hh>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clonelab
{
    class AlgebraError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class ArityMismatch : public AlgebraError
    {
    public:
        using AlgebraError::AlgebraError;
    };

    class UniverseMismatch : public AlgebraError
    {
    public:
        using AlgebraError::AlgebraError;
    };

    class InvalidArgument : public AlgebraError
    {
    public:
        using AlgebraError::AlgebraError;
    };

    /// A symbolic operation produced a value outside the active window, or a
    /// table was asked to evaluate outside its universe.
    class ValueEscapesWindow : public AlgebraError
    {
    public:
        ValueEscapesWindow(Tuple arguments, std::string detail);

        [[nodiscard]] auto arguments() const -> const Tuple & { return _arguments; }

    private:
        Tuple _arguments;
    };

    /// The result is larger than the configured budget. This is a verdict about
    /// the budget, not about the input.
    class BudgetExceeded : public AlgebraError
    {
    public:
        BudgetExceeded(std::string what_exceeded, std::size_t budget);

        [[nodiscard]] auto budget() const -> std::size_t { return _budget; }

    private:
        std::size_t _budget;
    };

    class WindowTooSmall : public AlgebraError
    {
    public:
        WindowTooSmall(Element required, const Universe & universe);

        [[nodiscard]] auto required() const -> Element { return _required; }

    private:
        Element _required;
    };

    [[nodiscard]] auto format_tuple(const Tuple & t) -> std::string;
}
