#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "graded_ring.hpp"
#include "rational.hpp"

namespace sysbound
{

/// Parse failure with the byte offset and the set of tokens that would have been accepted.
class ParseFailure : public Error
{
public:
    ParseFailure(std::size_t offset, std::set<std::string> expected, const std::string& found)
        : Error(ErrorCode::ParseError, describe(offset, expected, found)), offset_(offset),
          expected_(std::move(expected))
    {
    }

    std::size_t offset() const noexcept { return offset_; }
    const std::set<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string describe(std::size_t offset, const std::set<std::string>& expected, const std::string& found)
    {
        std::string s = "at byte " + std::to_string(offset) + ": expected ";
        bool first = true;
        for (const auto& e : expected) {
            if (!first) s += " | ";
            s += e;
            first = false;
        }
        return s + ", found " + (found.empty() ? "end of input" : "'" + found + "'");
    }

    std::size_t offset_;
    std::set<std::string> expected_;
};

struct Descriptor;
using DescriptorPtr = std::shared_ptr<const Descriptor>;

/// Abstract syntax tree of a space descriptor.
struct Descriptor {
    enum class Kind { CP, Q, S, S1, Point, CI, PB, BlP, Bl, WP, G25, Product, Twist };
    Kind kind = Kind::Point;
    int n = 0;                                   // CP, Q, S, BlP, G25 argument; twist amount; PB genus; WP degree
    std::vector<std::vector<int>> multidegrees;  // CI
    std::vector<int> list;                       // CI ambient, PB degrees, WP weights
    DescriptorPtr left, right;                   // Product operands; Bl and Twist use left
};

namespace detail
{

class Lexer
{
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    std::size_t pos()
    {
        skip();
        return pos_;
    }
    bool at_end()
    {
        skip();
        return pos_ >= text_.size();
    }
    char peek()
    {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    std::string peek_word()
    {
        skip();
        std::size_t e = pos_;
        while (e < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[e])) || text_[e] == '_')) ++e;
        return text_.substr(pos_, e - pos_);
    }
    std::string found()
    {
        skip();
        if (pos_ >= text_.size()) return {};
        std::string w = peek_word();
        return w.empty() ? std::string(1, text_[pos_]) : w;
    }
    [[noreturn]] void expected(std::set<std::string> what) { throw ParseFailure(pos(), std::move(what), found()); }

    void expect(char c)
    {
        if (peek() != c) expected({std::string("'") + c + "'"});
        ++pos_;
    }
    bool accept(char c)
    {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect_word(const std::string& w)
    {
        if (peek_word() != w) expected({w});
        pos_ += w.size();
    }
    std::string take_word()
    {
        std::string w = peek_word();
        pos_ += w.size();
        return w;
    }
    int integer()
    {
        skip();
        std::size_t s = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = s;
            expected({"integer"});
        }
        try {
            return std::stoi(text_.substr(s, pos_ - s));
        } catch (const std::out_of_range&) {
            pos_ = s;
            expected({"integer in range"});
        }
    }
    Rational rational()
    {
        Integer num = integer();
        Integer den = 1;
        if (accept('/')) den = integer();
        if (den == 0) fail(ErrorCode::ParseError, "zero denominator in rational literal");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    std::vector<int> int_list()
    {
        std::vector<int> out;
        expect('[');
        if (accept(']')) return out;
        do out.push_back(integer());
        while (accept(','));
        expect(']');
        return out;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

inline DescriptorPtr parse_product(Lexer& lx);

inline DescriptorPtr make_node(Descriptor d) { return std::make_shared<const Descriptor>(std::move(d)); }

inline DescriptorPtr parse_primary(Lexer& lx)
{
    static const std::set<std::string> kStarts = {"CP", "Q", "S", "S1", "pt", "CI", "PB", "BlP", "Bl", "WP", "G25", "'('"};
    if (lx.accept('(')) {
        DescriptorPtr inner = parse_product(lx);
        lx.expect(')');
        return inner;
    }
    const std::string w = lx.peek_word();
    Descriptor d;
    auto single = [&](Descriptor::Kind k) {
        lx.take_word();
        lx.expect('(');
        d.kind = k;
        d.n = lx.integer();
        lx.expect(')');
    };
    auto keyword = [&](const std::string& key) {
        lx.expect_word(key);
        lx.expect('=');
    };
    if (w == "CP") single(Descriptor::Kind::CP);
    else if (w == "Q") single(Descriptor::Kind::Q);
    else if (w == "S") single(Descriptor::Kind::S);
    else if (w == "BlP") single(Descriptor::Kind::BlP);
    else if (w == "G25") single(Descriptor::Kind::G25);
    else if (w == "S1") {
        lx.take_word();
        d.kind = Descriptor::Kind::S1;
    } else if (w == "pt") {
        lx.take_word();
        d.kind = Descriptor::Kind::Point;
    } else if (w == "CI") {
        lx.take_word();
        lx.expect('(');
        d.kind = Descriptor::Kind::CI;
        keyword("degrees");
        lx.expect('[');
        do d.multidegrees.push_back(lx.int_list());
        while (lx.accept(','));
        lx.expect(']');
        lx.expect(';');
        keyword("ambient");
        d.list = lx.int_list();
        lx.expect(')');
    } else if (w == "PB") {
        lx.take_word();
        lx.expect('(');
        d.kind = Descriptor::Kind::PB;
        keyword("degrees");
        d.list = lx.int_list();
        lx.expect(';');
        keyword("genus");
        d.n = lx.integer();
        lx.expect(')');
    } else if (w == "WP") {
        lx.take_word();
        lx.expect('(');
        d.kind = Descriptor::Kind::WP;
        keyword("weights");
        d.list = lx.int_list();
        lx.expect(';');
        keyword("degree");
        d.n = lx.integer();
        lx.expect(')');
    } else if (w == "Bl") {
        lx.take_word();
        lx.expect('(');
        d.kind = Descriptor::Kind::Bl;
        d.left = parse_product(lx);
        lx.expect(')');
    } else {
        lx.expected(kStarts);
    }
    return make_node(std::move(d));
}

inline DescriptorPtr parse_term(Lexer& lx)
{
    DescriptorPtr node = parse_primary(lx);
    while (lx.peek_word() == "twist") {
        lx.take_word();
        lx.expect('(');
        Descriptor d;
        d.kind = Descriptor::Kind::Twist;
        d.n = lx.integer();
        d.left = node;
        lx.expect(')');
        node = make_node(std::move(d));
    }
    return node;
}

inline DescriptorPtr parse_product(Lexer& lx)
{
    DescriptorPtr node = parse_term(lx);
    while (lx.accept('*')) {
        Descriptor d;
        d.kind = Descriptor::Kind::Product;
        d.left = node;
        d.right = parse_term(lx);
        node = make_node(std::move(d));
    }
    return node;
}

inline std::string join(const std::vector<int>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

} // namespace detail

/// Parse a descriptor such as "CP(3) * S1" or "CI(degrees=[[3]]; ambient=[4]) twist(1)".
/// Whitespace-insensitive; '*' is left-associative and binds looser than twist(k).
inline DescriptorPtr parse_space(const std::string& text)
{
    detail::Lexer lx(text);
    DescriptorPtr d = detail::parse_product(lx);
    if (!lx.at_end()) lx.expected({"'*'", "twist", "end of input"});
    return d;
}

/// Normal form: single spaces around '*', no other whitespace.
inline std::string print_space(const Descriptor& d)
{
    using K = Descriptor::Kind;
    switch (d.kind) {
    case K::CP: return "CP(" + std::to_string(d.n) + ")";
    case K::Q: return "Q(" + std::to_string(d.n) + ")";
    case K::S: return "S(" + std::to_string(d.n) + ")";
    case K::S1: return "S1";
    case K::Point: return "pt";
    case K::BlP: return "BlP(" + std::to_string(d.n) + ")";
    case K::G25: return "G25(" + std::to_string(d.n) + ")";
    case K::CI: {
        std::string s = "CI(degrees=[";
        for (std::size_t i = 0; i < d.multidegrees.size(); ++i) s += (i ? "," : "") + detail::join(d.multidegrees[i]);
        return s + "]; ambient=" + detail::join(d.list) + ")";
    }
    case K::PB: return "PB(degrees=" + detail::join(d.list) + "; genus=" + std::to_string(d.n) + ")";
    case K::WP: return "WP(weights=" + detail::join(d.list) + "; degree=" + std::to_string(d.n) + ")";
    case K::Bl: return "Bl(" + print_space(*d.left) + ")";
    case K::Twist: {
        std::string inner = print_space(*d.left);
        if (d.left->kind == K::Product) inner = "(" + inner + ")";
        return inner + " twist(" + std::to_string(d.n) + ")";
    }
    case K::Product: {
        std::string r = print_space(*d.right);
        if (d.right->kind == K::Product) r = "(" + r + ")";
        return print_space(*d.left) + " * " + r;
    }
    }
    return {};
}

/// Build the catalog space for a descriptor.
inline Space build_space(const Descriptor& d)
{
    using K = Descriptor::Kind;
    switch (d.kind) {
    case K::CP: return projective_space(d.n);
    case K::Q: return quadric(d.n);
    case K::S: return sphere(d.n);
    case K::S1: return circle();
    case K::Point: return point();
    case K::BlP: return blowup_point(d.n);
    case K::G25: return grassmannian_section(d.n);
    case K::CI: return complete_intersection(d.multidegrees, d.list);
    case K::PB: return proj_bundle_over_curve(d.list, d.n);
    case K::WP: return weighted_hypersurface(d.list, d.n);
    case K::Bl: return blowup_of(build_space(*d.left));
    case K::Twist: return twist_spin_c(build_space(*d.left), d.n);
    case K::Product: return product(build_space(*d.left), build_space(*d.right));
    }
    fail(ErrorCode::InvalidArgument, "unknown descriptor kind");
}

inline Space space_from_text(const std::string& text) { return build_space(*parse_space(text)); }

namespace detail
{

inline GradedClass parse_class_sum(Lexer& lx, const Space& x);

inline GradedClass parse_class_factor(Lexer& lx, const Space& x)
{
    const RingHandle& ring = x.require_ring();
    if (lx.accept('(')) {
        GradedClass inner = parse_class_sum(lx, x);
        lx.expect(')');
        return inner;
    }
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return GradedClass::scalar(ring, lx.rational());
    std::string w = lx.peek_word();
    if (w.empty() || !ring->generator_index(w)) {
        std::set<std::string> names = {"number", "'('"};
        for (const auto& g : ring->generators()) names.insert(g.name);
        lx.expected(names);
    }
    lx.take_word();
    GradedClass g = GradedClass::generator(ring, w);
    if (lx.accept('^')) {
        int e = lx.integer();
        if (e < 0) fail(ErrorCode::ParseError, "negative exponent in class expression");
        g = g.pow(static_cast<unsigned>(e));
    }
    return g;
}

inline GradedClass parse_class_term(Lexer& lx, const Space& x)
{
    GradedClass t = parse_class_factor(lx, x);
    while (lx.accept('*')) t = t * parse_class_factor(lx, x);
    return t;
}

inline GradedClass parse_class_sum(Lexer& lx, const Space& x)
{
    bool neg = lx.accept('-');
    GradedClass s = parse_class_term(lx, x);
    if (neg) s = Rational(-1) * s;
    while (true) {
        if (lx.accept('+')) s += parse_class_term(lx, x);
        else if (lx.accept('-')) s -= parse_class_term(lx, x);
        else return s;
    }
}

} // namespace detail

/// Parse a cohomology class such as "2*H - E" in the ring of `x`.
inline GradedClass parse_class(const Space& x, const std::string& text)
{
    detail::Lexer lx(text);
    GradedClass c = detail::parse_class_sum(lx, x);
    if (!lx.at_end()) lx.expected({"'+'", "'-'", "'*'", "end of input"});
    return c;
}

} // namespace sysbound
