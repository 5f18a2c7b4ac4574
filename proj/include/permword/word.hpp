#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "permword/perm.hpp"

namespace permword {

/// Letters of the expanded word.
enum class Symbol : std::uint8_t { g = 0, h = 1, g_inv = 2, h_inv = 3 };

constexpr Symbol inverse_symbol(Symbol s)
{
    return static_cast<Symbol>((static_cast<std::uint8_t>(s) + 2) % 4);
}

/// Occurrences of each letter in an expanded word.
struct GeneratorCounts {
    std::uint64_t g = 0;
    std::uint64_t h = 0;
    std::uint64_t g_inv = 0;
    std::uint64_t h_inv = 0;

    std::uint64_t total() const { return g + h + g_inv + h_inv; }
    std::uint64_t operator[](Symbol s) const
    {
        switch (s) {
        case Symbol::g: return g;
        case Symbol::h: return h;
        case Symbol::g_inv: return g_inv;
        case Symbol::h_inv: return h_inv;
        }
        return 0;
    }
    friend bool operator==(const GeneratorCounts&, const GeneratorCounts&) = default;
};

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw std::overflow_error("word length exceeds 64 bits");
    return a + b;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw std::overflow_error("word length exceeds 64 bits");
    return a * b;
}

} // namespace detail

/// Power-compressed straight-line word over {g, h}.
///
/// An immutable expression DAG. Subterms may be shared, so a word like
/// (v^l)^-1 t v^l stores v^l once. Expanded length and letter counts are
/// computed once per node at construction.
class Word {
public:
    enum class Kind : std::uint8_t { gen_g, gen_h, inv, pow, cat };

    /// The empty product.
    Word() : Word(concat({})) {}

    static Word g()
    {
        static const Word w(leaf(Kind::gen_g));
        return w;
    }
    static Word h()
    {
        static const Word w(leaf(Kind::gen_h));
        return w;
    }
    static Word identity() { return concat({}); }

    static Word symbol(Symbol s)
    {
        static const Word g_inv = inverse(g());
        static const Word h_inv = inverse(h());
        switch (s) {
        case Symbol::g: return g();
        case Symbol::h: return h();
        case Symbol::g_inv: return g_inv;
        case Symbol::h_inv: return h_inv;
        }
        return identity();
    }

    static Word inverse(Word w)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::inv;
        n->length = w.expanded_length();
        const auto c = w.counts();
        n->counts = {c.g_inv, c.h_inv, c.g, c.h};
        n->children.push_back(std::move(w));
        return Word(std::move(n));
    }

    static Word power(Word w, std::uint64_t exponent)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::pow;
        n->exponent = exponent;
        n->length = detail::checked_mul(w.expanded_length(), exponent);
        const auto c = w.counts();
        n->counts = {detail::checked_mul(c.g, exponent), detail::checked_mul(c.h, exponent),
                     detail::checked_mul(c.g_inv, exponent), detail::checked_mul(c.h_inv, exponent)};
        n->children.push_back(std::move(w));
        return Word(std::move(n));
    }

    /// w^m for any integer m; negative exponents become Pow(Inv w, |m|).
    static Word signed_power(const Word& w, std::int64_t exponent)
    {
        if (exponent >= 0)
            return power(w, static_cast<std::uint64_t>(exponent));
        return power(inverse(w), static_cast<std::uint64_t>(-exponent));
    }

    static Word concat(std::vector<Word> parts)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::cat;
        for (const auto& p : parts) {
            n->length = detail::checked_add(n->length, p.expanded_length());
            const auto c = p.counts();
            n->counts.g = detail::checked_add(n->counts.g, c.g);
            n->counts.h = detail::checked_add(n->counts.h, c.h);
            n->counts.g_inv = detail::checked_add(n->counts.g_inv, c.g_inv);
            n->counts.h_inv = detail::checked_add(n->counts.h_inv, c.h_inv);
        }
        n->children = std::move(parts);
        return Word(std::move(n));
    }

    /// Word spelling the given letters, sharing the four leaf nodes.
    static Word from_symbols(std::span<const Symbol> letters)
    {
        std::vector<Word> parts;
        parts.reserve(letters.size());
        for (Symbol s : letters)
            parts.push_back(symbol(s));
        return concat(std::move(parts));
    }

    Kind kind() const { return node_->kind; }
    const std::vector<Word>& children() const { return node_->children; }
    std::uint64_t exponent() const { return node_->exponent; }

    /// Number of letters after full expansion.
    std::uint64_t expanded_length() const { return node_->length; }
    GeneratorCounts counts() const { return node_->counts; }

    /// Identity of the underlying DAG node.
    const void* id() const { return node_.get(); }

private:
    struct Node {
        Kind kind = Kind::cat;
        std::uint64_t exponent = 0;
        std::uint64_t length = 0;
        GeneratorCounts counts;
        std::vector<Word> children;
    };

    explicit Word(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<const Node> leaf(Kind k)
    {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->length = 1;
        if (k == Kind::gen_g)
            n->counts.g = 1;
        else
            n->counts.h = 1;
        return n;
    }

    std::shared_ptr<const Node> node_;
};

/// r⁻¹ x r.
inline Word conjugate_word(const Word& x, const Word& r)
{
    return Word::concat({Word::inverse(r), x, r});
}

/// a⁻¹ b⁻¹ a b.
inline Word commutator_word(const Word& a, const Word& b)
{
    return Word::concat({Word::inverse(a), Word::inverse(b), a, b});
}

/// Group element denoted by w. Each distinct DAG node is evaluated once.
inline Permutation evaluate(const Word& w, const Permutation& g, const Permutation& h)
{
    detail::require_same_degree(g, h);
    std::unordered_map<const void*, Permutation> memo;
    // Iterative post-order so deep words cannot overflow the call stack.
    std::vector<std::pair<Word, bool>> stack{{w, false}};
    while (!stack.empty()) {
        auto [cur, expanded] = stack.back();
        stack.pop_back();
        if (memo.count(cur.id()))
            continue;
        if (!expanded && !cur.children().empty()) {
            stack.emplace_back(cur, true);
            for (const auto& c : cur.children())
                if (!memo.count(c.id()))
                    stack.emplace_back(c, false);
            continue;
        }
        Permutation value;
        switch (cur.kind()) {
        case Word::Kind::gen_g: value = g; break;
        case Word::Kind::gen_h: value = h; break;
        case Word::Kind::inv: value = invert(memo.at(cur.children()[0].id())); break;
        case Word::Kind::pow: value = power(memo.at(cur.children()[0].id()), cur.exponent()); break;
        case Word::Kind::cat: {
            value = Permutation(g.degree());
            for (const auto& c : cur.children())
                value = value * memo.at(c.id());
            break;
        }
        }
        memo.emplace(cur.id(), std::move(value));
    }
    return memo.at(w.id());
}

/// Number of distinct DAG nodes reachable from w.
inline std::size_t node_count(const Word& w)
{
    std::unordered_set<const void*> seen;
    std::vector<Word> stack{w};
    while (!stack.empty()) {
        Word cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur.id()).second)
            continue;
        for (const auto& c : cur.children())
            stack.push_back(c);
    }
    return seen.size();
}

/// Tree equality of the denoted expressions (sharing is ignored).
inline bool structurally_equal(const Word& a, const Word& b)
{
    std::unordered_set<std::string> equal_pairs;
    auto key = [](const Word& x, const Word& y) {
        return std::to_string(reinterpret_cast<std::uintptr_t>(x.id())) + ":" +
               std::to_string(reinterpret_cast<std::uintptr_t>(y.id()));
    };
    auto rec = [&](auto&& self, const Word& x, const Word& y) -> bool {
        if (x.id() == y.id())
            return true;
        const auto k = key(x, y);
        if (equal_pairs.count(k))
            return true;
        if (x.kind() != y.kind() || x.exponent() != y.exponent() || x.children().size() != y.children().size() ||
            x.expanded_length() != y.expanded_length())
            return false;
        for (std::size_t i = 0; i < x.children().size(); ++i)
            if (!self(self, x.children()[i], y.children()[i]))
                return false;
        equal_pairs.insert(k);
        return true;
    };
    return rec(rec, a, b);
}

/// Prefix-expression text.
///
/// Grammar:
///   expr := (gen g) | (gen h) | (inv expr) | (pow expr N) | (cat expr*) | $K
///   text := expr | (let (($0 expr) ($1 expr) ...) expr)
/// Non-leaf nodes referenced more than once are bound in a `let` so the DAG
/// survives a round trip; a word without sharing prints as a plain tree.
inline std::string serialize(const Word& w)
{
    std::unordered_map<const void*, std::size_t> refs;
    {
        std::vector<Word> stack{w};
        while (!stack.empty()) {
            Word cur = stack.back();
            stack.pop_back();
            if (refs[cur.id()]++ > 0)
                continue;
            for (const auto& c : cur.children())
                stack.push_back(c);
        }
    }
    auto is_leaf = [](const Word& x) { return x.kind() == Word::Kind::gen_g || x.kind() == Word::Kind::gen_h; };

    std::unordered_map<const void*, std::size_t> names;
    std::vector<std::string> bindings;
    auto emit = [&](auto&& self, const Word& x, bool top) -> std::string {
        if (auto it = names.find(x.id()); it != names.end())
            return "$" + std::to_string(it->second);
        std::string body;
        switch (x.kind()) {
        case Word::Kind::gen_g: return "(gen g)";
        case Word::Kind::gen_h: return "(gen h)";
        case Word::Kind::inv: body = "(inv " + self(self, x.children()[0], false) + ")"; break;
        case Word::Kind::pow:
            body = "(pow " + self(self, x.children()[0], false) + " " + std::to_string(x.exponent()) + ")";
            break;
        case Word::Kind::cat:
            body = "(cat";
            for (const auto& c : x.children())
                body += " " + self(self, c, false);
            body += ")";
            break;
        }
        if (!top && !is_leaf(x) && refs[x.id()] > 1) {
            names.emplace(x.id(), bindings.size());
            bindings.push_back(std::move(body));
            return "$" + std::to_string(bindings.size() - 1);
        }
        return body;
    };
    std::string root = emit(emit, w, true);
    if (bindings.empty())
        return root;
    std::string out = "(let (";
    for (std::size_t i = 0; i < bindings.size(); ++i) {
        if (i)
            out += ' ';
        out += "($" + std::to_string(i) + " " + bindings[i] + ")";
    }
    out += ") " + root + ")";
    return out;
}

namespace detail {

class WordParser {
public:
    explicit WordParser(std::string_view text) : text_(text) {}

    Word parse()
    {
        skip();
        Word w = peek_keyword("let") ? parse_let() : parse_expr();
        skip();
        if (pos_ != text_.size())
            fail("trailing characters");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw std::invalid_argument("malformed word at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    void expect(char c)
    {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek_keyword(std::string_view kw)
    {
        skip();
        std::size_t p = pos_;
        if (p >= text_.size() || text_[p] != '(')
            return false;
        ++p;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])))
            ++p;
        return text_.substr(p, kw.size()) == kw;
    }

    std::string_view atom()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
               text_[pos_] != ')')
            ++pos_;
        if (start == pos_)
            fail("expected atom");
        return text_.substr(start, pos_ - start);
    }

    std::uint64_t number(std::string_view a)
    {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
        if (ec != std::errc{} || ptr != a.data() + a.size())
            fail("expected non-negative integer");
        return v;
    }

    std::size_t reference(std::string_view a)
    {
        if (a.size() < 2 || a[0] != '$')
            fail("expected $reference");
        return static_cast<std::size_t>(number(a.substr(1)));
    }

    Word parse_let()
    {
        expect('(');
        if (atom() != "let")
            fail("expected let");
        expect('(');
        skip();
        while (pos_ < text_.size() && text_[pos_] == '(') {
            expect('(');
            const std::size_t idx = reference(atom());
            if (idx != bound_.size())
                fail("let bindings must be numbered consecutively from $0");
            bound_.push_back(parse_expr());
            expect(')');
            skip();
        }
        expect(')');
        Word body = parse_expr();
        expect(')');
        return body;
    }

    Word parse_expr()
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == '$') {
            const std::size_t idx = reference(atom());
            if (idx >= bound_.size())
                fail("unbound reference");
            return bound_[idx];
        }
        expect('(');
        const std::string_view head = atom();
        Word result;
        if (head == "gen") {
            const auto which = atom();
            if (which == "g")
                result = Word::g();
            else if (which == "h")
                result = Word::h();
            else
                fail("generator must be g or h");
        } else if (head == "inv") {
            result = Word::inverse(parse_expr());
        } else if (head == "pow") {
            Word base = parse_expr();
            result = Word::power(std::move(base), number(atom()));
        } else if (head == "cat") {
            std::vector<Word> parts;
            skip();
            while (pos_ < text_.size() && text_[pos_] != ')') {
                parts.push_back(parse_expr());
                skip();
            }
            result = Word::concat(std::move(parts));
        } else {
            fail("unknown node '" + std::string(head) + "'");
        }
        expect(')');
        return result;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<Word> bound_;
};

} // namespace detail

inline Word parse_word(std::string_view text) { return detail::WordParser(text).parse(); }

} // namespace permword
