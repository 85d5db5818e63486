#include <clonelab/errors.hh>

using namespace clonelab;

auto clonelab::format_tuple(const Tuple & t) -> std::string
{
    std::string result = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i != 0)
            result += ",";
        result += std::to_string(t[i]);
    }
    return result + ")";
}

ValueEscapesWindow::ValueEscapesWindow(Tuple arguments, std::string detail) :
    AlgebraError("value escapes window at " + format_tuple(arguments) + ": " + detail),
    _arguments(std::move(arguments))
{
}

BudgetExceeded::BudgetExceeded(std::string what_exceeded, std::size_t budget) :
    AlgebraError("budget of " + std::to_string(budget) + " exceeded by " + what_exceeded),
    _budget(budget)
{
}

WindowTooSmall::WindowTooSmall(Element required, const Universe & universe) :
    AlgebraError("bound " + std::to_string(required) + " does not fit in window of size " + std::to_string(universe.size())),
    _required(required)
{
}
