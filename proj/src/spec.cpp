#include "vera/spec.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace vera {

namespace {

enum class TokKind {
    Identifier,
    Variable,
    Number,
    True,
    False,
    InfKeyword,
    SupKeyword,
    LeftParen,
    RightParen,
    Comma,
    Dot,
    Colon,
    Slash,
    Plus,
    Minus,
    Star,
    Rel,
    Arrow,    // ->
    Iff,      // <->
    KwNot,
    KwAnd,
    KwOr,
    KwExists,
    KwForall,
    End,
};

struct Tok {
    TokKind kind;
    std::string text;
    std::int64_t number = 0;
    Relation rel = Relation::Equal;
    int line = 1;
    int column = 1;
};

std::vector<Tok> tokenize(std::string_view text) {
    std::vector<Tok> toks;
    std::size_t pos = 0;
    int line = 1, column = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (text[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++pos;
        }
    };
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '%') {
            while (pos < text.size() && text[pos] != '\n')
                advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Tok tok;
        tok.line = line;
        tok.column = column;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                advance(1);
            tok.kind = TokKind::Number;
            tok.text = std::string(text.substr(start, pos - start));
            tok.number = std::stoll(tok.text);
            toks.push_back(std::move(tok));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                advance(1);
            tok.text = std::string(text.substr(start, pos - start));
            if (tok.text == "not")
                tok.kind = TokKind::KwNot;
            else if (tok.text == "and")
                tok.kind = TokKind::KwAnd;
            else if (tok.text == "or")
                tok.kind = TokKind::KwOr;
            else if (tok.text == "exists")
                tok.kind = TokKind::KwExists;
            else if (tok.text == "forall")
                tok.kind = TokKind::KwForall;
            else if (std::isupper(static_cast<unsigned char>(tok.text[0])))
                tok.kind = TokKind::Variable;
            else
                tok.kind = TokKind::Identifier;
            toks.push_back(std::move(tok));
            continue;
        }
        if (c == '#') {
            std::size_t start = pos;
            advance(1);
            while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos])))
                advance(1);
            tok.text = std::string(text.substr(start, pos - start));
            if (tok.text == "#true")
                tok.kind = TokKind::True;
            else if (tok.text == "#false")
                tok.kind = TokKind::False;
            else if (tok.text == "#inf")
                tok.kind = TokKind::InfKeyword;
            else if (tok.text == "#sup")
                tok.kind = TokKind::SupKeyword;
            else
                throw ParseError("unknown keyword '" + tok.text + "'", tok.line, tok.column);
            toks.push_back(std::move(tok));
            continue;
        }
        auto two = text.substr(pos, std::min<std::size_t>(2, text.size() - pos));
        auto three = text.substr(pos, std::min<std::size_t>(3, text.size() - pos));
        if (three == "<->") {
            tok.kind = TokKind::Iff;
            advance(3);
        } else if (two == "->") {
            tok.kind = TokKind::Arrow;
            advance(2);
        } else if (two == "!=" || two == "<>") {
            tok.kind = TokKind::Rel;
            tok.rel = Relation::NotEqual;
            advance(2);
        } else if (two == "<=") {
            tok.kind = TokKind::Rel;
            tok.rel = Relation::LessEqual;
            advance(2);
        } else if (two == ">=") {
            tok.kind = TokKind::Rel;
            tok.rel = Relation::GreaterEqual;
            advance(2);
        } else {
            advance(1);
            switch (c) {
                case '(': tok.kind = TokKind::LeftParen; break;
                case ')': tok.kind = TokKind::RightParen; break;
                case ',': tok.kind = TokKind::Comma; break;
                case '.': tok.kind = TokKind::Dot; break;
                case ':': tok.kind = TokKind::Colon; break;
                case '/': tok.kind = TokKind::Slash; break;
                case '+': tok.kind = TokKind::Plus; break;
                case '-': tok.kind = TokKind::Minus; break;
                case '*': tok.kind = TokKind::Star; break;
                case '=': tok.kind = TokKind::Rel; tok.rel = Relation::Equal; break;
                case '<': tok.kind = TokKind::Rel; tok.rel = Relation::Less; break;
                case '>': tok.kind = TokKind::Rel; tok.rel = Relation::Greater; break;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'", tok.line,
                                     tok.column);
            }
        }
        toks.push_back(std::move(tok));
    }
    Tok end;
    end.kind = TokKind::End;
    end.line = line;
    end.column = column;
    toks.push_back(std::move(end));
    return toks;
}

Sort sort_of_variable_name(const std::string& name, int line, int column) {
    const char initial = name[0];
    if (initial >= 'I' && initial <= 'N')
        return Sort::Integer;
    if (initial >= 'U' && initial <= 'Z')
        return Sort::Object;
    throw ParseError("variables must start with I..N (integer) or U..Z (object), got '" + name +
                         "'",
                     line, column);
}

class FormulaParser {
public:
    FormulaParser(const std::vector<Tok>& toks, std::size_t& pos, const SortContext& ctx)
        : toks_(toks), pos_(pos), ctx_(ctx) {}

    FormulaPtr parse_closed() {
        FormulaPtr f = parse_formula();
        const auto vars = free_variables_ordered(f);
        return f_forall(vars, std::move(f));
    }

    FormulaPtr parse_formula() {
        FormulaPtr left = parse_disjunction();
        if (current().kind == TokKind::Arrow) {
            consume();
            return f_implies(std::move(left), parse_formula());  // right-associative
        }
        if (current().kind == TokKind::Iff) {
            consume();
            return f_iff(std::move(left), parse_disjunction());
        }
        return left;
    }

private:
    const Tok& current() const { return toks_[pos_]; }
    const Tok& peek() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
    Tok consume() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, current().line, current().column);
    }

    void expect(TokKind kind, const std::string& what) {
        if (current().kind != kind)
            fail("expected " + what);
        consume();
    }

    FormulaPtr parse_disjunction() {
        FormulaPtr left = parse_conjunction();
        while (current().kind == TokKind::KwOr) {
            consume();
            left = f_or(std::move(left), parse_conjunction());
        }
        return left;
    }

    FormulaPtr parse_conjunction() {
        FormulaPtr left = parse_unary();
        while (current().kind == TokKind::KwAnd) {
            consume();
            left = f_and(std::move(left), parse_unary());
        }
        return left;
    }

    FormulaPtr parse_unary() {
        if (current().kind == TokKind::KwNot) {
            consume();
            return f_not(parse_unary());
        }
        if (current().kind == TokKind::KwExists || current().kind == TokKind::KwForall) {
            const bool universal = consume().kind == TokKind::KwForall;
            std::vector<FOVariable> vars;
            for (;;) {
                if (current().kind != TokKind::Variable)
                    fail("expected variable after quantifier");
                const Tok tok = consume();
                vars.push_back({tok.text, sort_of_variable_name(tok.text, tok.line, tok.column)});
                if (current().kind != TokKind::Comma)
                    break;
                consume();
            }
            FormulaPtr body = parse_unary();
            return universal ? f_forall(vars, std::move(body)) : f_exists(vars, std::move(body));
        }
        return parse_primary();
    }

    FormulaPtr parse_primary() {
        switch (current().kind) {
            case TokKind::True:
                consume();
                return f_top();
            case TokKind::False:
                consume();
                return f_bottom();
            case TokKind::Identifier:
                if (peek().kind == TokKind::LeftParen)
                    return parse_atom();
                break;
            default:
                break;
        }
        if (current().kind == TokKind::LeftParen) {
            // Either a parenthesized formula or a parenthesized term starting
            // a comparison; try the comparison first and backtrack.
            const std::size_t saved = pos_;
            try {
                return parse_comparison_or_constant();
            } catch (const ParseError&) {
                pos_ = saved;
            }
            consume();
            FormulaPtr f = parse_formula();
            expect(TokKind::RightParen, "')'");
            return f;
        }
        return parse_comparison_or_constant();
    }

    FormulaPtr parse_comparison_or_constant() {
        FOTermPtr left = parse_term();
        if (current().kind == TokKind::Rel) {
            const Relation rel = consume().rel;
            return f_compare(rel, std::move(left), parse_term());
        }
        if (const auto* v = std::get_if<ValueTerm>(&left->node()))
            if (v->value.is_symbol())
                return f_atom(PredicateRef::constant({v->value.name(), 0}), {});
        fail("expected comparison or atom");
    }

    FormulaPtr parse_atom() {
        const std::string name = consume().text;
        expect(TokKind::LeftParen, "'('");
        std::vector<FOTermPtr> args;
        args.push_back(parse_term());
        while (current().kind == TokKind::Comma) {
            consume();
            args.push_back(parse_term());
        }
        expect(TokKind::RightParen, "')'");
        if (current().kind == TokKind::Rel)
            fail("an atom cannot appear in a comparison");
        const int arity = static_cast<int>(args.size());
        return f_atom(PredicateRef::constant({name, arity}), std::move(args));
    }

    FOTermPtr parse_term() {
        FOTermPtr left = parse_multiplicative();
        while (current().kind == TokKind::Plus || current().kind == TokKind::Minus) {
            const ArithOp op =
                consume().kind == TokKind::Plus ? ArithOp::Add : ArithOp::Subtract;
            left = make_arith(op, std::move(left), parse_multiplicative());
        }
        return left;
    }

    FOTermPtr parse_multiplicative() {
        FOTermPtr left = parse_term_unary();
        while (current().kind == TokKind::Star) {
            consume();
            left = make_arith(ArithOp::Multiply, std::move(left), parse_term_unary());
        }
        return left;
    }

    FOTermPtr parse_term_unary() {
        if (current().kind == TokKind::Minus) {
            consume();
            if (current().kind == TokKind::Number)
                return mk_numeral(-consume().number);
            return make_arith(ArithOp::Subtract, mk_numeral(0), parse_term_unary());
        }
        return parse_term_primary();
    }

    FOTermPtr parse_term_primary() {
        switch (current().kind) {
            case TokKind::Number:
                return mk_numeral(consume().number);
            case TokKind::Identifier: {
                const Tok tok = consume();
                if (current().kind == TokKind::LeftParen)
                    fail("unexpected '(' after constant in term position");
                return mk_symbol(tok.text);
            }
            case TokKind::Variable: {
                const Tok tok = consume();
                return mk_variable(
                    {tok.text, sort_of_variable_name(tok.text, tok.line, tok.column)});
            }
            case TokKind::InfKeyword:
                consume();
                return mk_value(Value::infimum());
            case TokKind::SupKeyword:
                consume();
                return mk_value(Value::supremum());
            case TokKind::LeftParen: {
                consume();
                FOTermPtr t = parse_term();
                expect(TokKind::RightParen, "')'");
                return t;
            }
            default:
                fail("expected term");
        }
    }

    FOTermPtr make_arith(ArithOp op, FOTermPtr left, FOTermPtr right) {
        for (const auto& side : {left, right})
            if (sort_of(side, ctx_) != Sort::Integer)
                throw ParseError("arithmetic requires integer-sorted arguments, got '" +
                                     vera::to_string(side) + "'",
                                 current().line, current().column);
        return mk_arith(op, std::move(left), std::move(right));
    }

    const std::vector<Tok>& toks_;
    std::size_t& pos_;
    const SortContext& ctx_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, const SortContext& ctx) {
    const auto toks = tokenize(text);
    std::size_t pos = 0;
    FormulaParser parser(toks, pos, ctx);
    FormulaPtr f = parser.parse_closed();
    if (toks[pos].kind != TokKind::End)
        throw ParseError("trailing input after formula", toks[pos].line, toks[pos].column);
    return f;
}

namespace {

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : toks_(tokenize(text)) {}

    Specification parse() {
        while (current().kind != TokKind::End)
            parse_statement();
        validate();
        return spec_;
    }

private:
    const Tok& current() const { return toks_[pos_]; }
    Tok consume() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, current().line, current().column);
    }

    void expect(TokKind kind, const std::string& what) {
        if (current().kind != kind)
            fail("expected " + what);
        consume();
    }

    void parse_statement() {
        if (current().kind != TokKind::Identifier)
            fail("expected statement keyword");
        const std::string keyword = consume().text;
        if (keyword == "input") {
            expect(TokKind::Colon, "':'");
            parse_input_items();
            expect(TokKind::Dot, "'.'");
            return;
        }
        if (keyword == "output") {
            expect(TokKind::Colon, "':'");
            parse_output_items();
            expect(TokKind::Dot, "'.'");
            return;
        }
        LemmaDirection direction = LemmaDirection::Both;
        if (keyword == "lemma" && current().kind == TokKind::LeftParen) {
            consume();
            if (current().kind != TokKind::Identifier)
                fail("expected lemma direction");
            const std::string dir = consume().text;
            if (dir == "forward")
                direction = LemmaDirection::Forward;
            else if (dir == "backward")
                direction = LemmaDirection::Backward;
            else
                fail("unknown lemma direction '" + dir + "'");
            expect(TokKind::RightParen, "')'");
        }
        expect(TokKind::Colon, "':'");
        const SortContext ctx = spec_.sort_context();
        FormulaParser parser(toks_, pos_, ctx);
        FormulaPtr raw = parser.parse_formula();
        const auto closure = free_variables_ordered(raw);
        FormulaPtr f = f_forall(closure, std::move(raw));
        expect(TokKind::Dot, "'.'");

        if (keyword == "assume")
            spec_.assumptions.push_back(std::move(f));
        else if (keyword == "spec")
            spec_.specs.push_back(std::move(f));
        else if (keyword == "axiom")
            spec_.axioms.push_back(std::move(f));
        else if (keyword == "lemma")
            spec_.lemmas.push_back({direction, std::move(f)});
        else
            fail("unknown statement keyword '" + keyword + "'");
    }

    void parse_input_items() {
        for (;;) {
            if (current().kind != TokKind::Identifier)
                fail("expected input declaration");
            const Tok name = consume();
            if (current().kind == TokKind::Slash) {
                consume();
                if (current().kind != TokKind::Number)
                    fail("expected arity");
                spec_.inputs.insert({name.text, static_cast<int>(consume().number)});
            } else {
                Sort sort = Sort::Object;
                if (current().kind == TokKind::Arrow) {
                    consume();
                    if (current().kind != TokKind::Identifier)
                        fail("expected sort name");
                    const std::string sort_name = consume().text;
                    if (sort_name == "integer")
                        sort = Sort::Integer;
                    else if (sort_name == "object")
                        sort = Sort::Object;
                    else
                        fail("unknown sort '" + sort_name + "'");
                }
                if (spec_.placeholders.count(name.text))
                    throw ParseError("duplicate placeholder declaration '" + name.text + "'",
                                     name.line, name.column);
                spec_.placeholders.emplace(name.text, sort);
            }
            if (current().kind != TokKind::Comma)
                break;
            consume();
        }
    }

    void parse_output_items() {
        for (;;) {
            if (current().kind != TokKind::Identifier)
                fail("expected output declaration");
            const std::string name = consume().text;
            expect(TokKind::Slash, "'/'");
            if (current().kind != TokKind::Number)
                fail("expected arity");
            spec_.outputs.insert({name, static_cast<int>(consume().number)});
            if (current().kind != TokKind::Comma)
                break;
            consume();
        }
    }

    void validate() const {
        for (const auto& assumption : spec_.assumptions)
            for (const auto& sym : predicate_constants(assumption))
                if (spec_.outputs.count(sym))
                    throw std::invalid_argument("assumption mentions output symbol " +
                                                sym.to_string());
    }

    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
    Specification spec_;
};

}  // namespace

Specification parse_spec(std::string_view text) { return SpecParser(text).parse(); }

std::vector<FormulaPtr> to_assumption_formulas(const Specification& spec) {
    return spec.assumptions;
}

std::string print_spec(const Specification& spec) {
    std::ostringstream out;
    for (const auto& [name, sort] : spec.placeholders)
        out << "input: " << name << " -> " << (sort == Sort::Integer ? "integer" : "object")
            << ".\n";
    for (const auto& sym : spec.inputs)
        out << "input: " << sym.to_string() << ".\n";
    for (const auto& sym : spec.outputs)
        out << "output: " << sym.to_string() << ".\n";
    for (const auto& f : spec.assumptions)
        out << "assume: " << to_string(f) << ".\n";
    for (const auto& f : spec.specs)
        out << "spec: " << to_string(f) << ".\n";
    for (const auto& f : spec.axioms)
        out << "axiom: " << to_string(f) << ".\n";
    for (const auto& lemma : spec.lemmas) {
        out << "lemma";
        if (lemma.direction == LemmaDirection::Forward)
            out << "(forward)";
        else if (lemma.direction == LemmaDirection::Backward)
            out << "(backward)";
        out << ": " << to_string(lemma.formula) << ".\n";
    }
    return out.str();
}

}  // namespace vera
