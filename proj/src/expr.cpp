#include "tanbundle/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "tanbundle/errors.hpp"

namespace tanbundle {

// ---------------------------------------------------------------------------
// Expression AST
// ---------------------------------------------------------------------------

struct Expr::Node {
    enum class Kind { Number, Variable, Unary, Binary, Call };
    Kind kind = Kind::Number;
    double number = 0.0;
    int variable = -1;
    char op = 0;              // one of + - * / ^ for Binary, '-' for Unary
    int func = -1;            // 0 exp, 1 sqrt, 2 sin, 3 cos
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = v;
    return n;
}

NodePtr make_variable(int index) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Variable;
    n->variable = index;
    return n;
}

NodePtr make_unary(NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Unary;
    n->op = '-';
    n->lhs = std::move(child);
    return n;
}

NodePtr make_binary(char op, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_call(int func, NodePtr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Call;
    n->func = func;
    n->lhs = std::move(arg);
    return n;
}

int function_id(const std::string& name) {
    if (name == "exp") return 0;
    if (name == "sqrt") return 1;
    if (name == "sin") return 2;
    if (name == "cos") return 3;
    return -1;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& variables)
        : text_(text), variables_(variables) {}

    NodePtr run() {
        NodePtr root = parse_sum();
        skip_spaces();
        if (pos_ != text_.size()) {
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        }
        return root;
    }

private:
    const std::string& text_;
    const std::vector<std::string>& variables_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw UsageError("expression error at position " + std::to_string(pos_ + 1) +
                         " in \"" + text_ + "\": " + what);
    }

    void skip_spaces() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_spaces();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_spaces();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    // sum := product (('+' | '-') product)*
    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (consume('+')) {
                lhs = make_binary('+', lhs, parse_product());
            } else if (consume('-')) {
                lhs = make_binary('-', lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    // product := signed (('*' | '/') signed)*
    NodePtr parse_product() {
        NodePtr lhs = parse_signed();
        for (;;) {
            if (consume('*')) {
                lhs = make_binary('*', lhs, parse_signed());
            } else if (consume('/')) {
                lhs = make_binary('/', lhs, parse_signed());
            } else {
                return lhs;
            }
        }
    }

    // signed := '-' signed | power   (so -x^2 means -(x^2))
    NodePtr parse_signed() {
        if (consume('-')) return make_unary(parse_signed());
        return parse_power();
    }

    // power := atom ('^' signed)?    (right-associative)
    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (consume('^')) return make_binary('^', base, parse_signed());
        return base;
    }

    NodePtr parse_atom() {
        skip_spaces();
        if (pos_ >= text_.size()) fail("expected a value");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr parse_number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make_number(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = text_.substr(start, pos_ - start);
        const int func = function_id(name);
        if (func >= 0) {
            if (!consume('(')) fail("function '" + name + "' needs parentheses");
            NodePtr arg = parse_sum();
            if (!consume(')')) fail("expected ')' after argument of '" + name + "'");
            return make_call(func, arg);
        }
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (variables_[i] == name) return make_variable(static_cast<int>(i));
        }
        fail("unknown identifier '" + name + "'");
    }
};

double eval_node(const Node& n, const std::vector<double>& values) {
    switch (n.kind) {
        case Node::Kind::Number:
            return n.number;
        case Node::Kind::Variable:
            return values[static_cast<std::size_t>(n.variable)];
        case Node::Kind::Unary:
            return -eval_node(*n.lhs, values);
        case Node::Kind::Binary: {
            const double a = eval_node(*n.lhs, values);
            const double b = eval_node(*n.rhs, values);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
                default: break;
            }
            break;
        }
        case Node::Kind::Call: {
            const double a = eval_node(*n.lhs, values);
            switch (n.func) {
                case 0: return std::exp(a);
                case 1: return std::sqrt(a);
                case 2: return std::sin(a);
                case 3: return std::cos(a);
                default: break;
            }
            break;
        }
    }
    throw ModelError("corrupt expression tree");
}

} // namespace

Expr Expr::parse(const std::string& text, const std::vector<std::string>& variables) {
    Expr e;
    e.root_ = Parser(text, variables).run();
    e.text_ = text;
    return e;
}

double Expr::eval(const std::vector<double>& values) const {
    if (!root_) throw UsageError("evaluating an empty expression");
    return eval_node(*root_, values);
}

// ---------------------------------------------------------------------------
// File loaders
// ---------------------------------------------------------------------------

namespace {

std::string strip(const std::string& line) {
    std::size_t b = 0;
    std::size_t e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    return line.substr(b, e - b);
}

std::string drop_comment(const std::string& line) {
    const std::size_t hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] void file_fail(const std::string& path, int lineno, const std::string& what) {
    throw UsageError(path + ":" + std::to_string(lineno) + ": " + what);
}

std::string base_name(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

} // namespace

ChartedManifold load_manifold_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open metric file '" + path + "'");

    int dim = 0;
    double radius = 1.0;
    bool have_radius = false;
    std::vector<std::string> vars;
    // entries[(i,j)] with i <= j, 0-based
    std::map<std::pair<int, int>, Expr> entries;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(drop_comment(raw));
        if (line.empty()) continue;

        std::istringstream words(line);
        std::string key;
        words >> key;
        if (key == "dim") {
            if (dim > 0) file_fail(path, lineno, "duplicate 'dim'");
            if (!(words >> dim) || dim < 1) file_fail(path, lineno, "'dim' needs a positive integer");
            std::string extra;
            if (words >> extra) file_fail(path, lineno, "trailing text after 'dim'");
            vars.clear();
            for (int i = 1; i <= dim; ++i) vars.push_back("x" + std::to_string(i));
        } else if (key == "radius") {
            if (!(words >> radius) || !(radius > 0.0)) {
                file_fail(path, lineno, "'radius' needs a positive number");
            }
            have_radius = true;
        } else if (key == "g") {
            if (dim == 0) file_fail(path, lineno, "'dim' must come before 'g' entries");
            int i = 0;
            int j = 0;
            if (!(words >> i >> j)) file_fail(path, lineno, "expected 'g i j = <expr>'");
            if (i < 1 || i > dim || j < 1 || j > dim) {
                file_fail(path, lineno, "metric indices must lie in 1.." + std::to_string(dim));
            }
            std::string rest;
            std::getline(words, rest);
            const std::size_t eq = rest.find('=');
            if (eq == std::string::npos) file_fail(path, lineno, "expected '=' in 'g i j = <expr>'");
            const std::string body = strip(rest.substr(eq + 1));
            if (body.empty()) file_fail(path, lineno, "empty metric expression");
            auto ij = std::make_pair(std::min(i, j) - 1, std::max(i, j) - 1);
            if (entries.count(ij)) {
                file_fail(path, lineno, "duplicate metric entry g " + std::to_string(i) + " " +
                                            std::to_string(j));
            }
            try {
                entries.emplace(ij, Expr::parse(body, vars));
            } catch (const UsageError& err) {
                file_fail(path, lineno, err.what());
            }
        } else {
            file_fail(path, lineno, "unknown directive '" + key + "'");
        }
    }

    if (dim == 0) file_fail(path, lineno, "file never declares 'dim'");
    if (!have_radius) file_fail(path, lineno, "file never declares 'radius'");

    auto table = std::make_shared<std::map<std::pair<int, int>, Expr>>(std::move(entries));
    const int m = dim;
    auto metric = [table, m](const Eigen::VectorXd& x) {
        std::vector<double> values(x.data(), x.data() + x.size());
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(m, m);
        for (const auto& [ij, expr] : *table) {
            const double v = expr.eval(values);
            g(ij.first, ij.second) = v;
            g(ij.second, ij.first) = v;
        }
        return g;
    };
    return ChartedManifold::custom(m, metric, radius, "custom:" + base_name(path));
}

WeightFunction load_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open weight file '" + path + "'");

    const std::vector<std::string> vars = {"t"};
    std::map<std::string, Expr> parts;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(drop_comment(raw));
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) file_fail(path, lineno, "expected '<name> = <expr>'");
        const std::string key = strip(line.substr(0, eq));
        const std::string body = strip(line.substr(eq + 1));
        if (key != "a" && key != "a1" && key != "a2") {
            file_fail(path, lineno, "unknown entry '" + key + "' (expected a, a1, a2)");
        }
        if (body.empty()) file_fail(path, lineno, "empty expression for '" + key + "'");
        if (parts.count(key)) file_fail(path, lineno, "duplicate entry '" + key + "'");
        try {
            parts.emplace(key, Expr::parse(body, vars));
        } catch (const UsageError& err) {
            file_fail(path, lineno, err.what());
        }
    }

    for (const char* need : {"a", "a1", "a2"}) {
        if (!parts.count(need)) {
            throw UsageError(path + ": missing entry '" + std::string(need) +
                             "' (a weight file must define a, a1, and a2)");
        }
    }

    auto table = std::make_shared<std::map<std::string, Expr>>(std::move(parts));
    auto fa = [table](double t) { return table->at("a").eval({t}); };
    auto fa1 = [table](double t) { return table->at("a1").eval({t}); };
    auto fa2 = [table](double t) { return table->at("a2").eval({t}); };
    return WeightFunction::custom(fa, fa1, fa2, "custom:" + base_name(path));
}

} // namespace tanbundle
