#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "cli.hpp"
#include "qhedge/errors.hpp"

namespace qhedge::cli {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    double parse() {
        const double v = expr();
        skip_space();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        if (!std::isfinite(v)) fail("value is not finite");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw FormatError("cannot parse \"" + s_ + "\": " + why);
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool starts_primary() {
        skip_space();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    double expr() {
        double v = term();
        while (true) {
            if (accept('+')) v += term();
            else if (accept('-')) v -= term();
            else return v;
        }
    }

    double term() {
        double v = unary();
        while (true) {
            if (accept('*')) v *= unary();
            else if (accept('/')) {
                const double d = unary();
                if (d == 0.0) fail("division by zero");
                v /= d;
            } else if (starts_primary()) v *= power();  // 3pi, 2sqrt(2)
            else return v;
        }
    }

    double unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    double power() {
        const double base = primary();
        if (accept('^')) return std::pow(base, unary());
        return base;
    }

    double primary() {
        skip_space();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (accept('(')) {
            const double v = expr();
            if (!accept(')')) fail("missing ')'");
            return v;
        }
        const char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
            const std::string word = s_.substr(pos_, end - pos_);
            pos_ = end;
            if (word == "pi") return M_PI;
            if (word == "sqrt") {
                if (!accept('(')) fail("sqrt needs '('");
                const double v = expr();
                if (!accept(')')) fail("missing ')'");
                if (v < 0.0) fail("sqrt of a negative number");
                return std::sqrt(v);
            }
            fail("unknown name '" + word + "'");
        }
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

double parse_expression(const std::string& text) { return Parser(text).parse(); }

std::vector<double> Grid::points() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[i] = (i == count - 1) ? stop : start + (stop - start) * i / (count - 1);
    }
    return out;
}

Grid parse_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? first : text.find(':', first + 1);
    if (second == std::string::npos) throw FormatError("grid must look like start:stop:count");
    Grid g;
    g.start = parse_expression(text.substr(0, first));
    g.stop = parse_expression(text.substr(first + 1, second - first - 1));
    const double count = parse_expression(text.substr(second + 1));
    if (count != std::floor(count) || count < 2 || count > 1e6) {
        throw FormatError("grid count must be an integer >= 2");
    }
    g.count = static_cast<int>(count);
    if (!(g.start < g.stop)) throw FormatError("grid needs start < stop");
    return g;
}

}  // namespace qhedge::cli
