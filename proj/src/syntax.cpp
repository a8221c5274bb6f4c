#include "vera/syntax.hpp"

#include <cctype>
#include <sstream>

namespace vera {

std::string Value::to_string() const {
    switch (kind_) {
        case Kind::Infimum: return "#inf";
        case Kind::Numeral: return std::to_string(number_);
        case Kind::Symbol: return name_;
        case Kind::Supremum: return "#sup";
    }
    return {};
}

std::string to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Subtract: return "-";
        case BinaryOp::Multiply: return "*";
        case BinaryOp::Divide: return "/";
        case BinaryOp::Modulo: return "\\";
        case BinaryOp::Interval: return "..";
    }
    return {};
}

std::string to_string(Relation rel) {
    switch (rel) {
        case Relation::Equal: return "=";
        case Relation::NotEqual: return "!=";
        case Relation::Less: return "<";
        case Relation::Greater: return ">";
        case Relation::LessEqual: return "<=";
        case Relation::GreaterEqual: return ">=";
    }
    return {};
}

bool ProgramTerm::is_ground() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ProgramVariable>)
                return false;
            else if constexpr (std::is_same_v<T, BinaryTerm>)
                return n.left->is_ground() && n.right->is_ground();
            else
                return true;
        },
        node_);
}

bool ProgramTerm::is_precomputed() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            return !std::is_same_v<T, ProgramVariable> && !std::is_same_v<T, BinaryTerm>;
        },
        node_);
}

ProgramTermPtr make_term(ProgramTerm::Node node) {
    return std::make_shared<const ProgramTerm>(std::move(node));
}

ProgramTermPtr term_from_value(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Infimum: return make_term(Infimum{});
        case Value::Kind::Numeral: return make_term(Numeral{v.number()});
        case Value::Kind::Symbol: return make_term(SymbolicConstant{v.name()});
        case Value::Kind::Supremum: return make_term(Supremum{});
    }
    return nullptr;
}

bool equal(const ProgramTermPtr& a, const ProgramTermPtr& b) {
    if (a.get() == b.get())
        return true;
    const auto& na = a->node();
    const auto& nb = b->node();
    if (na.index() != nb.index())
        return false;
    if (const auto* bin = std::get_if<BinaryTerm>(&na)) {
        const auto& other = std::get<BinaryTerm>(nb);
        return bin->op == other.op && equal(bin->left, other.left) &&
               equal(bin->right, other.right);
    }
    return std::visit(
        [&nb](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BinaryTerm>)
                return false;
            else
                return n == std::get<T>(nb);
        },
        na);
}

Value value_of_precomputed(const ProgramTermPtr& t) {
    if (const auto* n = std::get_if<Numeral>(&t->node()))
        return Value::numeral(n->value);
    if (const auto* c = std::get_if<SymbolicConstant>(&t->node()))
        return Value::symbol(c->name);
    if (std::get_if<Infimum>(&t->node()))
        return Value::infimum();
    if (std::get_if<Supremum>(&t->node()))
        return Value::supremum();
    throw std::invalid_argument("term is not precomputed: " + print_term(t));
}

Ordering compare_precomputed(const ProgramTermPtr& a, const ProgramTermPtr& b) {
    const auto cmp = value_of_precomputed(a) <=> value_of_precomputed(b);
    if (cmp < 0)
        return Ordering::Less;
    if (cmp > 0)
        return Ordering::Greater;
    return Ordering::Equal;
}

bool equal(const Atom& a, const Atom& b) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size())
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal(a.args[i], b.args[i]))
            return false;
    return true;
}

static bool equal(const BodyElement& a, const BodyElement& b) {
    if (a.index() != b.index())
        return false;
    if (const auto* la = std::get_if<Literal>(&a)) {
        const auto& lb = std::get<Literal>(b);
        return la->polarity == lb.polarity && equal(la->atom, lb.atom);
    }
    const auto& ca = std::get<Comparison>(a);
    const auto& cb = std::get<Comparison>(b);
    return ca.rel == cb.rel && equal(ca.left, cb.left) && equal(ca.right, cb.right);
}

bool equal(const Rule& a, const Rule& b) {
    if (a.head.kind != b.head.kind || a.body.size() != b.body.size())
        return false;
    if (a.head.atom.has_value() != b.head.atom.has_value())
        return false;
    if (a.head.atom && !equal(*a.head.atom, *b.head.atom))
        return false;
    for (std::size_t i = 0; i < a.body.size(); ++i)
        if (!equal(a.body[i], b.body[i]))
            return false;
    return true;
}

bool equal(const Program& a, const Program& b) {
    if (a.rules.size() != b.rules.size())
        return false;
    for (std::size_t i = 0; i < a.rules.size(); ++i)
        if (!equal(a.rules[i], b.rules[i]))
            return false;
    return true;
}

std::vector<PredicateSymbol> occurring_predicates(const Program& p) {
    std::vector<PredicateSymbol> result;
    auto add = [&result](const Atom& a) {
        const auto sym = a.symbol();
        for (const auto& s : result)
            if (s == sym)
                return;
        result.push_back(sym);
    };
    for (const auto& rule : p.rules) {
        if (rule.head.atom)
            add(*rule.head.atom);
        for (const auto& elem : rule.body)
            if (const auto* lit = std::get_if<Literal>(&elem))
                add(lit->atom);
    }
    return result;
}

namespace {

void collect_variables(const ProgramTermPtr& t, std::set<std::string>& out) {
    if (const auto* v = std::get_if<ProgramVariable>(&t->node())) {
        out.insert(v->name);
    } else if (const auto* bin = std::get_if<BinaryTerm>(&t->node())) {
        collect_variables(bin->left, out);
        collect_variables(bin->right, out);
    }
}

}  // namespace

std::set<std::string> variable_names(const Rule& r) {
    std::set<std::string> names;
    if (r.head.atom)
        for (const auto& arg : r.head.atom->args)
            collect_variables(arg, names);
    for (const auto& elem : r.body) {
        if (const auto* lit = std::get_if<Literal>(&elem)) {
            for (const auto& arg : lit->atom.args)
                collect_variables(arg, names);
        } else {
            const auto& cmp = std::get<Comparison>(elem);
            collect_variables(cmp.left, names);
            collect_variables(cmp.right, names);
        }
    }
    return names;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class TokenKind {
    Identifier,   // lowercase-initial
    Variable,     // uppercase-initial
    Number,
    InfKeyword,
    SupKeyword,
    NotKeyword,
    Dot,
    Comma,
    Semicolon,
    If,           // :-
    LeftParen,
    RightParen,
    LeftBrace,
    RightBrace,
    Plus,
    Minus,
    Star,
    Slash,
    Backslash,
    DotDot,
    Rel,          // comparison symbol, payload in rel
    End,
};

struct Token {
    TokenKind kind;
    std::string text;
    std::int64_t number = 0;
    Relation rel = Relation::Equal;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_whitespace_and_comments();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) {
            tok.kind = TokenKind::End;
            return tok;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                advance();
            tok.kind = TokenKind::Number;
            tok.text = std::string(text_.substr(start, pos_ - start));
            tok.number = std::stoll(tok.text);
            return tok;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                advance();
            tok.text = std::string(text_.substr(start, pos_ - start));
            if (tok.text == "not")
                tok.kind = TokenKind::NotKeyword;
            else if (std::isupper(static_cast<unsigned char>(tok.text[0])))
                tok.kind = TokenKind::Variable;
            else
                tok.kind = TokenKind::Identifier;
            return tok;
        }
        if (c == '#') {
            std::size_t start = pos_;
            advance();
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
                advance();
            tok.text = std::string(text_.substr(start, pos_ - start));
            if (tok.text == "#inf")
                tok.kind = TokenKind::InfKeyword;
            else if (tok.text == "#sup")
                tok.kind = TokenKind::SupKeyword;
            else
                throw ParseError("unsupported directive '" + tok.text + "'", tok.line, tok.column);
            return tok;
        }
        auto two = [this]() -> std::string_view {
            return text_.substr(pos_, std::min<std::size_t>(2, text_.size() - pos_));
        };
        if (two() == ":-") { tok.kind = TokenKind::If; advance(); advance(); return tok; }
        if (two() == "..") { tok.kind = TokenKind::DotDot; advance(); advance(); return tok; }
        if (two() == "!=" || two() == "<>") {
            tok.kind = TokenKind::Rel; tok.rel = Relation::NotEqual;
            advance(); advance(); return tok;
        }
        if (two() == "<=") { tok.kind = TokenKind::Rel; tok.rel = Relation::LessEqual; advance(); advance(); return tok; }
        if (two() == ">=") { tok.kind = TokenKind::Rel; tok.rel = Relation::GreaterEqual; advance(); advance(); return tok; }
        advance();
        switch (c) {
            case '.': tok.kind = TokenKind::Dot; return tok;
            case ',': tok.kind = TokenKind::Comma; return tok;
            case ';': tok.kind = TokenKind::Semicolon; return tok;
            case '(': tok.kind = TokenKind::LeftParen; return tok;
            case ')': tok.kind = TokenKind::RightParen; return tok;
            case '{': tok.kind = TokenKind::LeftBrace; return tok;
            case '}': tok.kind = TokenKind::RightBrace; return tok;
            case '+': tok.kind = TokenKind::Plus; return tok;
            case '-': tok.kind = TokenKind::Minus; return tok;
            case '*': tok.kind = TokenKind::Star; return tok;
            case '/': tok.kind = TokenKind::Slash; return tok;
            case '\\': tok.kind = TokenKind::Backslash; return tok;
            case '=': tok.kind = TokenKind::Rel; tok.rel = Relation::Equal; return tok;
            case '<': tok.kind = TokenKind::Rel; tok.rel = Relation::Less; return tok;
            case '>': tok.kind = TokenKind::Rel; tok.rel = Relation::Greater; return tok;
            case '|':
                throw ParseError("disjunctive heads are not supported", tok.line, tok.column);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", tok.line, tok.column);
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_whitespace_and_comments() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) {
        current_ = lexer_.next();
        next_ = lexer_.next();
    }

    Program parse() {
        Program program;
        while (current_.kind != TokenKind::End)
            program.rules.push_back(parse_rule());
        return program;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, current_.line, current_.column);
    }

    Token consume() {
        Token tok = current_;
        current_ = next_;
        next_ = lexer_.next();
        return tok;
    }

    void expect(TokenKind kind, const std::string& what) {
        if (current_.kind != kind)
            fail("expected " + what);
        consume();
    }

    Rule parse_rule() {
        Rule rule;
        if (current_.kind == TokenKind::If) {
            consume();
            rule.head = Head::empty();
            rule.body = parse_body();
        } else if (current_.kind == TokenKind::LeftBrace) {
            consume();
            Atom atom = parse_atom();
            expect(TokenKind::RightBrace, "'}'");
            rule.head = Head::choice(std::move(atom));
            if (current_.kind == TokenKind::If) {
                consume();
                rule.body = parse_body();
            }
        } else {
            Atom atom = parse_atom();
            rule.head = Head::basic(std::move(atom));
            if (current_.kind == TokenKind::If) {
                consume();
                rule.body = parse_body();
            }
        }
        expect(TokenKind::Dot, "'.'");
        return rule;
    }

    std::vector<BodyElement> parse_body() {
        std::vector<BodyElement> body;
        body.push_back(parse_body_element());
        while (current_.kind == TokenKind::Comma || current_.kind == TokenKind::Semicolon) {
            consume();
            body.push_back(parse_body_element());
        }
        return body;
    }

    BodyElement parse_body_element() {
        if (current_.kind == TokenKind::NotKeyword) {
            consume();
            Polarity polarity = Polarity::Negated;
            if (current_.kind == TokenKind::NotKeyword) {
                consume();
                polarity = Polarity::DoublyNegated;
            }
            Atom atom = parse_atom();
            return Literal{std::move(atom), polarity};
        }
        // An atom is an identifier directly followed by '('; anything else
        // parsed here must be a comparison or a 0-ary atom.
        if (current_.kind == TokenKind::Identifier && next_.kind == TokenKind::LeftParen) {
            Atom atom = parse_atom();
            if (current_.kind == TokenKind::Rel)
                fail("an atom cannot appear in a comparison");
            return Literal{std::move(atom), Polarity::Positive};
        }
        ProgramTermPtr left = parse_term();
        if (current_.kind == TokenKind::Rel) {
            Relation rel = consume().rel;
            ProgramTermPtr right = parse_term();
            return Comparison{std::move(left), rel, std::move(right)};
        }
        if (const auto* c = std::get_if<SymbolicConstant>(&left->node()))
            return Literal{Atom{c->name, {}}, Polarity::Positive};
        fail("expected literal or comparison");
    }

    Atom parse_atom() {
        if (current_.kind != TokenKind::Identifier)
            fail("expected predicate name");
        Atom atom;
        atom.predicate = consume().text;
        if (current_.kind == TokenKind::LeftParen) {
            consume();
            atom.args.push_back(parse_term());
            while (current_.kind == TokenKind::Comma)
                consume(), atom.args.push_back(parse_term());
            if (current_.kind == TokenKind::Semicolon)
                fail("term pooling is not supported");
            expect(TokenKind::RightParen, "')'");
        }
        return atom;
    }

    // Precedence: '..' lowest (non-associative), then +/-, then * / \,
    // unary '-' highest.
    ProgramTermPtr parse_term() {
        ProgramTermPtr left = parse_additive();
        if (current_.kind == TokenKind::DotDot) {
            consume();
            ProgramTermPtr right = parse_additive();
            return make_term(BinaryTerm{BinaryOp::Interval, std::move(left), std::move(right)});
        }
        return left;
    }

    ProgramTermPtr parse_additive() {
        ProgramTermPtr left = parse_multiplicative();
        while (current_.kind == TokenKind::Plus || current_.kind == TokenKind::Minus) {
            const BinaryOp op =
                consume().kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Subtract;
            ProgramTermPtr right = parse_multiplicative();
            left = make_term(BinaryTerm{op, std::move(left), std::move(right)});
        }
        return left;
    }

    ProgramTermPtr parse_multiplicative() {
        ProgramTermPtr left = parse_unary();
        while (current_.kind == TokenKind::Star || current_.kind == TokenKind::Slash ||
               current_.kind == TokenKind::Backslash) {
            BinaryOp op = BinaryOp::Multiply;
            if (current_.kind == TokenKind::Slash)
                op = BinaryOp::Divide;
            else if (current_.kind == TokenKind::Backslash)
                op = BinaryOp::Modulo;
            consume();
            ProgramTermPtr right = parse_unary();
            left = make_term(BinaryTerm{op, std::move(left), std::move(right)});
        }
        return left;
    }

    ProgramTermPtr parse_unary() {
        if (current_.kind == TokenKind::Minus) {
            consume();
            if (current_.kind == TokenKind::Number)
                return make_term(Numeral{-consume().number});
            // -t is shorthand for 0 - t
            ProgramTermPtr operand = parse_unary();
            return make_term(
                BinaryTerm{BinaryOp::Subtract, make_term(Numeral{0}), std::move(operand)});
        }
        return parse_primary();
    }

    ProgramTermPtr parse_primary() {
        switch (current_.kind) {
            case TokenKind::Number:
                return make_term(Numeral{consume().number});
            case TokenKind::Identifier: {
                Token tok = consume();
                if (current_.kind == TokenKind::LeftParen)
                    fail("function terms are not supported (predicate in term position?)");
                return make_term(SymbolicConstant{tok.text});
            }
            case TokenKind::Variable:
                return make_term(ProgramVariable{consume().text});
            case TokenKind::InfKeyword:
                consume();
                return make_term(Infimum{});
            case TokenKind::SupKeyword:
                consume();
                return make_term(Supremum{});
            case TokenKind::LeftParen: {
                consume();
                ProgramTermPtr t = parse_term();
                expect(TokenKind::RightParen, "')'");
                return t;
            }
            default:
                fail("expected term");
        }
    }

    Lexer lexer_;
    Token current_;
    Token next_;
};

int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Interval: return 0;
        case BinaryOp::Add:
        case BinaryOp::Subtract: return 1;
        case BinaryOp::Multiply:
        case BinaryOp::Divide:
        case BinaryOp::Modulo: return 2;
    }
    return 0;
}

void print_term_prec(std::ostream& out, const ProgramTermPtr& t, int min_prec) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Numeral>) {
                out << n.value;
            } else if constexpr (std::is_same_v<T, SymbolicConstant>) {
                out << n.name;
            } else if constexpr (std::is_same_v<T, ProgramVariable>) {
                out << n.name;
            } else if constexpr (std::is_same_v<T, Infimum>) {
                out << "#inf";
            } else if constexpr (std::is_same_v<T, Supremum>) {
                out << "#sup";
            } else {
                const int prec = precedence(n.op);
                // '..' is non-associative, +,-,*,/,\ are left-associative.
                const bool parens = prec < min_prec;
                if (parens)
                    out << '(';
                print_term_prec(out, n.left, n.op == BinaryOp::Interval ? prec + 1 : prec);
                out << to_string(n.op);
                print_term_prec(out, n.right, prec + 1);
                if (parens)
                    out << ')';
            }
        },
        t->node());
}

void print_atom(std::ostream& out, const Atom& atom) {
    out << atom.predicate;
    if (!atom.args.empty()) {
        out << '(';
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            if (i)
                out << ',';
            print_term_prec(out, atom.args[i], 0);
        }
        out << ')';
    }
}

void print_body_element(std::ostream& out, const BodyElement& elem) {
    if (const auto* lit = std::get_if<Literal>(&elem)) {
        if (lit->polarity == Polarity::Negated)
            out << "not ";
        else if (lit->polarity == Polarity::DoublyNegated)
            out << "not not ";
        print_atom(out, lit->atom);
    } else {
        const auto& cmp = std::get<Comparison>(elem);
        print_term_prec(out, cmp.left, 0);
        out << ' ' << to_string(cmp.rel) << ' ';
        print_term_prec(out, cmp.right, 0);
    }
}

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

std::string print_term(const ProgramTermPtr& t) {
    std::ostringstream out;
    print_term_prec(out, t, 0);
    return out.str();
}

std::string print_rule(const Rule& r) {
    std::ostringstream out;
    switch (r.head.kind) {
        case Head::Kind::Basic:
            print_atom(out, *r.head.atom);
            break;
        case Head::Kind::Choice:
            out << '{';
            print_atom(out, *r.head.atom);
            out << '}';
            break;
        case Head::Kind::Empty:
            break;
    }
    if (!r.body.empty() || r.is_constraint()) {
        if (r.head.kind != Head::Kind::Empty)
            out << ' ';
        out << ":-";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            out << (i ? ", " : " ");
            print_body_element(out, r.body[i]);
        }
    }
    out << '.';
    return out.str();
}

std::string print_program(const Program& p) {
    std::ostringstream out;
    for (const auto& rule : p.rules)
        out << print_rule(rule) << '\n';
    return out.str();
}

}  // namespace vera
