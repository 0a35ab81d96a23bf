/*
 *  Copyright (C) 2026  The cpsf authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

#include "cpsf/spec_language.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cpsf::lang {

using model::ActionDecl;
using model::ConcernId;
using model::Literal;
using model::PropKind;
using model::SystemProp;

std::string ParseError::str() const {
    std::ostringstream os;
    os << span.file << ':' << span.line << ':' << span.column << ": error[" << code << "]: " << message;
    if (!expected.empty()) {
        os << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
            os << (i ? ", " : "") << '\'' << expected[i] << '\'';
        os << ')';
    }
    return os.str();
}

int Scenario::last_step() const {
    int last = -1;
    for (const auto& occ : history)
        last = std::max(last, occ.step);
    return last;
}

std::string QueryExpr::str() const { return target.str() + "@" + std::to_string(step); }

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Nat, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
    bool space_before = false;
};

constexpr std::string_view punctuation = ".,[]()=&-+@{}_";

std::vector<Token> lex(std::string_view text, const std::string& file, std::vector<ParseError>& errors) {
    std::vector<Token> out;
    int line = 1, col = 1;
    bool space = true;
    std::size_t i = 0;
    auto bump = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n')
                bump(1);
            space = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            bump(1);
            space = true;
            continue;
        }
        Token tok;
        tok.line = line;
        tok.col = col;
        tok.space_before = space;
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t n = 0;
            while (start + n < text.size() && std::isalnum(static_cast<unsigned char>(text[start + n])))
                ++n;
            tok.kind = Tok::Ident;
            tok.text = std::string(text.substr(start, n));
            bump(n);
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t n = 0;
            while (start + n < text.size() && std::isdigit(static_cast<unsigned char>(text[start + n])))
                ++n;
            tok.kind = Tok::Nat;
            tok.text = std::string(text.substr(start, n));
            bump(n);
        } else if (punctuation.find(ch) != std::string_view::npos) {
            tok.kind = Tok::Punct;
            tok.text = std::string(1, ch);
            bump(1);
        } else {
            errors.push_back({SourceSpan{file, line, col, 1}, "UnexpectedCharacter",
                              std::string("unexpected character '") + ch + "'", {}});
            bump(1);
            space = true;
            continue;
        }
        space = false;
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.col = col;
    end.space_before = true;
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Raw syntax, before name resolution

struct RawPath {
    std::vector<std::string> segs;
    SourceSpan span;
};

struct RawProp {
    std::vector<std::string> segs;
    std::string name;
    SourceSpan span;

    std::string str() const {
        SystemProp p{segs, name, PropKind::Property};
        return p.str();
    }
};

struct RawTarget {
    bool is_sat = false;
    RawProp prop;
    RawPath path;
    SourceSpan span;
};

struct RawLit {
    bool positive = true;
    RawTarget target;
};

struct RawAction {
    std::string name;
    std::optional<RawProp> config;
    SourceSpan span;
};

struct SyntaxError {};

bool is_make(std::string_view name) { return name == "MakeTrue" || name == "MakeFalse"; }

class TokenParser {
public:
    TokenParser(std::string_view text, std::string file) : file_(std::move(file)) {
        tokens_ = lex(text, file_, errors_);
    }

    std::vector<ParseError>& errors() { return errors_; }

protected:
    const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size())
            ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Tok::End; }

    static bool is_punct(const Token& t, char c) { return t.kind == Tok::Punct && t.text[0] == c; }
    static bool is_word(const Token& t, std::string_view w) { return t.kind == Tok::Ident && t.text == w; }

    SourceSpan span(const Token& t) const {
        std::size_t len = t.kind == Tok::End ? 0 : t.text.size();
        return SourceSpan{file_, t.line, t.col, len};
    }
    SourceSpan span_between(const Token& first, const Token& last) const {
        SourceSpan s = span(first);
        if (last.line == first.line)
            s.length = static_cast<std::size_t>(last.col - first.col) + last.text.size();
        return s;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
        case Tok::End:
            return "end of input";
        case Tok::Nat:
            return "number '" + t.text + "'";
        case Tok::Ident:
            return "'" + t.text + "'";
        case Tok::Punct:
            break;
        }
        return "'" + t.text + "'";
    }

    [[noreturn]] void fail(const Token& at, std::vector<std::string> expected) {
        std::string msg = "unexpected " + describe(at);
        errors_.push_back({span(at), "SyntaxError", std::move(msg), std::move(expected)});
        throw SyntaxError{};
    }

    void error(SourceSpan where, std::string code, std::string message) {
        errors_.push_back({std::move(where), std::move(code), std::move(message), {}});
    }

    const Token& expect_punct(char c) {
        if (!is_punct(peek(), c))
            fail(peek(), {std::string(1, c)});
        return advance();
    }
    const Token& expect_word(std::string_view w) {
        if (!is_word(peek(), w))
            fail(peek(), {std::string(w)});
        return advance();
    }
    const Token& expect_ident(std::string_view what) {
        if (peek().kind != Tok::Ident)
            fail(peek(), {std::string(what)});
        return advance();
    }

    // A '.' continues a concern path only when glued to identifiers on both sides.
    bool path_continues() const {
        return is_punct(peek(), '.') && !peek().space_before && peek(1).kind == Tok::Ident && !peek(1).space_before;
    }

    // Skips to just past the next statement terminator (or up to a '}').
    void recover(bool stop_at_brace) {
        while (!at_end()) {
            if (stop_at_brace && is_punct(peek(), '}'))
                return;
            if (is_punct(peek(), '.') && !path_continues()) {
                advance();
                return;
            }
            advance();
        }
    }

    RawPath parse_path() {
        const Token& first = expect_ident("concern path");
        RawPath p;
        p.segs.push_back(first.text);
        const Token* last = &first;
        while (path_continues()) {
            advance();
            last = &advance();
            p.segs.push_back(last->text);
        }
        p.span = span_between(first, *last);
        return p;
    }

    RawProp parse_prop() {
        const Token& first = expect_ident("system path");
        RawProp p;
        p.segs.push_back(first.text);
        while (is_punct(peek(), '_')) {
            advance();
            p.segs.push_back(expect_ident("system path segment").text);
        }
        if (!is_punct(peek(), '['))
            fail(peek(), {"["});
        const Token& open = advance();
        p.name = expect_ident("property name").text;
        if (!is_punct(peek(), ']')) {
            errors_.push_back({span(open), "UnclosedBracket", "unclosed '[' in property atom", {"]"}});
            throw SyntaxError{};
        }
        const Token& close = advance();
        p.span = span_between(first, close);
        return p;
    }

    RawTarget parse_target() {
        RawTarget t;
        if (is_word(peek(), "sat") && is_punct(peek(1), '(')) {
            const Token& first = advance();
            advance();
            t.is_sat = true;
            t.path = parse_path();
            const Token& close = expect_punct(')');
            t.span = span_between(first, close);
        } else {
            t.prop = parse_prop();
            t.span = t.prop.span;
        }
        return t;
    }

    RawLit parse_lit() {
        RawLit lit;
        if (is_punct(peek(), '-')) {
            advance();
            lit.positive = false;
        }
        lit.target = parse_target();
        return lit;
    }

    std::vector<RawLit> parse_cond() {
        std::vector<RawLit> out;
        out.push_back(parse_lit());
        while (is_punct(peek(), '&')) {
            advance();
            out.push_back(parse_lit());
        }
        return out;
    }

    RawAction parse_action_ref() {
        const Token& first = expect_ident("action name");
        RawAction a;
        a.name = first.text;
        a.span = span(first);
        if (is_make(first.text) && is_punct(peek(), '(')) {
            advance();
            a.config = parse_prop();
            const Token& close = expect_punct(')');
            a.span = span_between(first, close);
        }
        return a;
    }

    int parse_nat() {
        if (peek().kind != Tok::Nat)
            fail(peek(), {"natural number"});
        const Token& t = advance();
        try {
            return std::stoi(t.text);
        } catch (const std::exception&) {
            error(span(t), "NumberOutOfRange", "step number is too large");
            throw SyntaxError{};
        }
    }

    bool parse_bool() {
        if (is_word(peek(), "true")) {
            advance();
            return true;
        }
        if (is_word(peek(), "false")) {
            advance();
            return false;
        }
        fail(peek(), {"true", "false"});
    }

    std::string file_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<ParseError> errors_;
};

// ---------------------------------------------------------------------------
// Name resolution against a DomainSpec

class Resolver {
public:
    Resolver(const model::DomainSpec& spec, std::vector<ParseError>& errors, std::string unknown_code = "")
        : spec_(spec), errors_(errors), unknown_code_(std::move(unknown_code)) {}

    std::optional<SystemProp> prop(const RawProp& raw) {
        if (const SystemProp* p = spec_.find_property(raw.str()))
            return *p;
        report(raw.span, "UnknownProperty", "unknown property or configuration " + raw.str());
        return std::nullopt;
    }

    std::optional<ConcernId> concern(const RawPath& raw) {
        ConcernId partial(raw.segs);
        if (auto c = model::resolve_concern(spec_.forest, partial))
            return c;
        report(raw.span, "UnknownConcern", "unknown or ambiguous concern " + partial.str());
        return std::nullopt;
    }

    std::optional<model::Fluent> target(const RawTarget& raw, bool allow_all) {
        if (!raw.is_sat) {
            if (auto p = prop(raw.prop))
                return model::Fluent{*p};
            return std::nullopt;
        }
        if (raw.path.segs.size() == 1 && raw.path.segs[0] == "all") {
            if (allow_all)
                return model::Fluent{model::SatAll{}};
            report(raw.span, "InvalidReference", "sat(all) is not allowed here");
            return std::nullopt;
        }
        if (auto c = concern(raw.path))
            return model::Fluent{model::Sat{*c}};
        return std::nullopt;
    }

    std::optional<Literal> lit(const RawLit& raw, bool allow_all) {
        if (auto f = target(raw.target, allow_all))
            return Literal{*f, raw.positive};
        return std::nullopt;
    }

    std::optional<model::Condition> cond(const std::vector<RawLit>& raw) {
        model::Condition c;
        bool ok = true;
        for (const auto& r : raw) {
            auto l = lit(r, false);
            if (!l) {
                ok = false;
                continue;
            }
            if (std::find(c.literals.begin(), c.literals.end(), l->complement()) != c.literals.end()) {
                errors_.push_back({r.target.span, "ContradictoryCondition",
                                   "condition contains both " + l->str() + " and its complement", {}});
                ok = false;
                continue;
            }
            if (std::find(c.literals.begin(), c.literals.end(), *l) == c.literals.end())
                c.literals.push_back(*l);
        }
        if (!ok)
            return std::nullopt;
        return c;
    }

    std::optional<ActionDecl> action(const RawAction& raw) {
        std::string name = raw.name;
        if (raw.config)
            name += "(" + raw.config->str() + ")";
        if (const ActionDecl* a = spec_.find_action(name))
            return *a;
        if (raw.config && !spec_.find_property(raw.config->str()))
            report(raw.config->span, "UnknownProperty", "unknown configuration " + raw.config->str());
        else
            report(raw.span, "UnknownAction", "unknown action " + name);
        return std::nullopt;
    }

private:
    void report(const SourceSpan& where, const std::string& code, std::string message) {
        errors_.push_back({where, unknown_code_.empty() ? code : unknown_code_, std::move(message), {}});
    }

    const model::DomainSpec& spec_;
    std::vector<ParseError>& errors_;
    std::string unknown_code_;
};

// ---------------------------------------------------------------------------
// Domain files

struct AspectDecl {
    std::string name;
    SourceSpan span;
};
struct ConcernDecl {
    RawPath path;
};
struct PropDecl {
    RawProp prop;
    bool config = false;
    std::vector<RawPath> addresses;
};
struct ActionDeclRaw {
    std::string name;
    SourceSpan span;
};
struct DefaultRaw {
    RawTarget target;
    bool value = true;
    SourceSpan span;
};
struct ImpactsRaw {
    std::vector<RawLit> cond;
    model::Sign sign = model::Sign::Neg;
    RawProp target;
    SourceSpan span;
};
struct CausesRaw {
    RawAction action;
    RawLit effect;
    std::vector<RawLit> cond;
    SourceSpan span;
};
struct TriggersRaw {
    std::vector<RawLit> cond;
    RawAction action;
    SourceSpan span;
};

using RawStatement = std::variant<DefaultRaw, ImpactsRaw, CausesRaw, TriggersRaw>;

class DomainParser : public TokenParser {
public:
    using TokenParser::TokenParser;

    ParseResult<model::DomainSpec> run() {
        while (!at_end()) {
            try {
                statement();
            } catch (const SyntaxError&) {
                recover(false);
            }
        }
        return build();
    }

private:
    bool decl_keyword(std::string_view kw) const {
        if (!is_word(peek(), kw))
            return false;
        const Token& next = peek(1);
        return !(is_punct(next, '[') || is_punct(next, '_') || is_punct(next, '('));
    }

    void statement() {
        const Token& first = peek();
        if (decl_keyword("aspect")) {
            advance();
            const Token& name = expect_ident("aspect name");
            expect_punct('.');
            aspects_.push_back({name.text, span(name)});
        } else if (decl_keyword("concern")) {
            advance();
            RawPath p = parse_path();
            expect_punct('.');
            concerns_.push_back({std::move(p)});
        } else if (decl_keyword("property") || decl_keyword("config")) {
            bool config = is_word(advance(), "config");
            PropDecl d;
            d.config = config;
            d.prop = parse_prop();
            if (!config && is_word(peek(), "addresses")) {
                advance();
                d.addresses.push_back(parse_path());
                while (is_punct(peek(), ',')) {
                    advance();
                    d.addresses.push_back(parse_path());
                }
            }
            expect_punct('.');
            props_.push_back(std::move(d));
        } else if (decl_keyword("action")) {
            advance();
            const Token& name = expect_ident("action name");
            expect_punct('.');
            actions_.push_back({name.text, span(name)});
        } else if (decl_keyword("default")) {
            advance();
            DefaultRaw d;
            d.target = parse_target();
            expect_punct('=');
            d.value = parse_bool();
            const Token& end = expect_punct('.');
            d.span = span_between(first, end);
            statements_.push_back(std::move(d));
        } else if (first.kind == Tok::Ident && (is_word(peek(1), "causes") || (is_make(first.text) && is_punct(peek(1), '(')))) {
            CausesRaw c;
            c.action = parse_action_ref();
            expect_word("causes");
            c.effect = parse_lit();
            if (is_word(peek(), "if")) {
                advance();
                c.cond = parse_cond();
            }
            const Token& end = expect_punct('.');
            c.span = span_between(first, end);
            statements_.push_back(std::move(c));
        } else {
            auto cond = parse_cond();
            if (is_word(peek(), "impacts")) {
                advance();
                ImpactsRaw s;
                if (is_punct(peek(), '+') && !peek().space_before)
                    s.sign = model::Sign::Pos;
                else if (is_punct(peek(), '-') && !peek().space_before)
                    s.sign = model::Sign::Neg;
                else
                    fail(peek(), {"+", "-"});
                advance();
                s.cond = std::move(cond);
                s.target = parse_prop();
                const Token& end = expect_punct('.');
                s.span = span_between(first, end);
                statements_.push_back(std::move(s));
            } else if (is_word(peek(), "triggers")) {
                advance();
                TriggersRaw s;
                s.cond = std::move(cond);
                s.action = parse_action_ref();
                const Token& end = expect_punct('.');
                s.span = span_between(first, end);
                statements_.push_back(std::move(s));
            } else {
                fail(peek(), {"impacts+", "impacts-", "triggers"});
            }
        }
    }

    ParseResult<model::DomainSpec> build() {
        model::DomainSpec spec;
        std::map<std::string, SourceSpan> where; // entity -> first declaration

        for (const auto& a : aspects_) {
            spec.forest.add_aspect(a.name);
            where.emplace(a.name, a.span);
        }
        for (const auto& c : concerns_) {
            ConcernId id(c.path.segs);
            if (!spec.forest.aspects.count(ConcernId({id.aspect()}))) {
                error(c.path.span, "UnknownAspect", "'" + id.aspect() + "' is not a declared aspect");
                continue;
            }
            spec.forest.add_path(id);
            where.emplace(id.str(), c.path.span);
        }
        for (const auto& d : props_) {
            SystemProp p{d.prop.segs, d.prop.name, d.config ? PropKind::Configuration : PropKind::Property};
            if (const SystemProp* prior = spec.find_property(p.str())) {
                if (prior->kind != p.kind)
                    error(d.prop.span, "DuplicateDeclaration", p.str() + " is declared as both property and configuration");
                continue;
            }
            if (d.config)
                spec.add_configuration(p);
            else
                spec.add_property(p);
            where.emplace(p.str(), d.prop.span);
        }
        for (const auto& a : actions_) {
            if (is_make(a.name)) {
                error(a.span, "ReservedName", a.name + " actions are generated for configurations");
                continue;
            }
            spec.add_action(a.name);
            where.emplace(a.name, a.span);
        }

        Resolver resolve(spec, errors_);
        for (const auto& d : props_) {
            for (const auto& path : d.addresses) {
                auto c = resolve.concern(path);
                if (!c)
                    continue;
                const SystemProp* p = spec.find_property(d.prop.str());
                if (!p || p->kind != PropKind::Property)
                    continue;
                spec.add_link(*c, *p);
            }
        }

        std::map<std::string, bool> defaults;
        for (const auto& raw : statements_) {
            if (const auto* d = std::get_if<DefaultRaw>(&raw)) {
                auto f = resolve.target(d->target, false);
                if (!f)
                    continue;
                auto [it, fresh] = defaults.emplace(model::to_string(*f), d->value);
                if (!fresh && it->second != d->value) {
                    error(d->span, "ConflictingDefault", model::to_string(*f) + " defaults to both true and false");
                    continue;
                }
                spec.statements.emplace_back(model::Default{*f, d->value});
            } else if (const auto* s = std::get_if<ImpactsRaw>(&raw)) {
                auto cond = resolve.cond(s->cond);
                auto target = resolve.prop(s->target);
                if (cond && target)
                    spec.statements.emplace_back(model::Impacts{*cond, s->sign, *target});
            } else if (const auto* s = std::get_if<CausesRaw>(&raw)) {
                auto action = resolve.action(s->action);
                std::optional<model::Condition> cond = model::Condition{};
                if (!s->cond.empty())
                    cond = resolve.cond(s->cond);
                std::optional<SystemProp> effect;
                if (s->effect.target.is_sat)
                    error(s->effect.target.span, "InvalidEffect", "actions can only affect properties and configurations");
                else
                    effect = resolve.prop(s->effect.target.prop);
                if (action && cond && effect)
                    spec.statements.emplace_back(model::Causes{*action, *effect, s->effect.positive, *cond});
            } else if (const auto* s = std::get_if<TriggersRaw>(&raw)) {
                auto cond = resolve.cond(s->cond);
                auto action = resolve.action(s->action);
                if (cond && action)
                    spec.statements.emplace_back(model::Triggers{*cond, *action});
            }
        }

        ParseResult<model::DomainSpec> result;
        SourceSpan fallback{file_, 1, 1, 0};
        auto span_of = [&](const std::string& entity) {
            auto it = where.find(entity);
            return it == where.end() ? fallback : it->second;
        };
        if (errors_.empty()) {
            for (const auto& d : model::validate(spec).diagnostics) {
                ParseError e{span_of(d.entity), d.code, d.entity.empty() ? d.message : d.entity + ": " + d.message, {}};
                if (d.severity == model::Severity::Error)
                    errors_.push_back(std::move(e));
                else
                    result.warnings.push_back(std::move(e));
            }
        }
        result.errors = std::move(errors_);
        if (result.errors.empty())
            result.value = std::move(spec);
        return result;
    }

    std::vector<AspectDecl> aspects_;
    std::vector<ConcernDecl> concerns_;
    std::vector<PropDecl> props_;
    std::vector<ActionDeclRaw> actions_;
    std::vector<RawStatement> statements_;
};

// ---------------------------------------------------------------------------
// Scenario files

class ScenarioParser : public TokenParser {
public:
    ScenarioParser(std::string_view text, std::string file, const model::DomainSpec& spec)
        : TokenParser(text, std::move(file)), spec_(spec) {}

    ParseResult<std::vector<Scenario>> run() {
        std::vector<Scenario> out;
        if (!is_word(peek(), "scenario")) {
            Scenario s;
            s.name = "main";
            body(s, false);
            out.push_back(std::move(s));
        } else {
            std::set<std::string> names;
            while (!at_end()) {
                try {
                    expect_word("scenario");
                    const Token& name = expect_ident("scenario name");
                    expect_punct('{');
                    Scenario s;
                    s.name = name.text;
                    body(s, true);
                    expect_punct('}');
                    if (!names.insert(s.name).second)
                        error(span(name), "DuplicateScenario", "scenario " + s.name + " is defined twice");
                    out.push_back(std::move(s));
                } catch (const SyntaxError&) {
                    // Skip to the end of the current block.
                    while (!at_end() && !is_punct(peek(), '}'))
                        advance();
                    if (!at_end())
                        advance();
                }
            }
        }
        ParseResult<std::vector<Scenario>> result;
        result.errors = std::move(errors_);
        if (result.errors.empty())
            result.value = std::move(out);
        return result;
    }

private:
    void body(Scenario& s, bool in_block) {
        Resolver resolve(spec_, errors_, "UnknownAtom");
        while (!at_end() && !(in_block && is_punct(peek(), '}'))) {
            try {
                const Token& first = peek();
                if (is_word(first, "obs")) {
                    advance();
                    RawProp raw = parse_prop();
                    expect_punct('=');
                    bool value = parse_bool();
                    const Token& end = expect_punct('.');
                    auto p = resolve.prop(raw);
                    if (!p)
                        continue;
                    auto [it, fresh] = s.observations.emplace(*p, value);
                    if (!fresh && it->second != value)
                        error(span_between(first, end), "ContradictoryObs",
                              p->str() + " is observed both true and false");
                } else if (is_word(first, "history")) {
                    advance();
                    RawAction raw = parse_action_ref();
                    expect_punct('@');
                    int step = parse_nat();
                    expect_punct('.');
                    if (auto a = resolve.action(raw))
                        s.history.insert(Occurrence{*a, step});
                } else {
                    fail(first, {"obs", "history"});
                }
            } catch (const SyntaxError&) {
                recover(in_block);
            }
        }
    }

    const model::DomainSpec& spec_;
};

// ---------------------------------------------------------------------------
// Query / goal / action expressions

class ExprParser : public TokenParser {
public:
    ExprParser(std::string_view text, const model::DomainSpec& spec)
        : TokenParser(text, "<query>"), spec_(spec) {}

    ParseResult<QueryExpr> query() {
        ParseResult<QueryExpr> result;
        try {
            RawLit raw = parse_lit();
            int step = 0;
            if (is_punct(peek(), '@')) {
                advance();
                step = parse_nat();
            }
            if (!at_end())
                fail(peek(), {"@", "end of input"});
            Resolver resolve(spec_, errors_, "UnknownAtom");
            if (auto l = resolve.lit(raw, true))
                result.value = QueryExpr{*l, step};
        } catch (const SyntaxError&) {
        }
        result.errors = std::move(errors_);
        if (!result.errors.empty())
            result.value.reset();
        return result;
    }

    ParseResult<Literal> goal() {
        ParseResult<Literal> result;
        try {
            bool positive = true;
            if (is_punct(peek(), '-')) {
                advance();
                positive = false;
            }
            RawLit raw;
            raw.positive = positive;
            bool bare_path = peek().kind == Tok::Ident && !is_punct(peek(1), '[') && !is_punct(peek(1), '_') &&
                             !(is_word(peek(), "sat") && is_punct(peek(1), '('));
            if (bare_path) {
                raw.target.is_sat = true;
                raw.target.path = parse_path();
                raw.target.span = raw.target.path.span;
            } else {
                raw.target = parse_target();
            }
            if (!at_end())
                fail(peek(), {"end of input"});
            Resolver resolve(spec_, errors_, "UnknownGoal");
            if (auto l = resolve.lit(raw, true))
                result.value = *l;
        } catch (const SyntaxError&) {
        }
        result.errors = std::move(errors_);
        if (!result.errors.empty())
            result.value.reset();
        return result;
    }

    ParseResult<ActionDecl> action() {
        ParseResult<ActionDecl> result;
        try {
            RawAction raw = parse_action_ref();
            if (!at_end())
                fail(peek(), {"end of input"});
            Resolver resolve(spec_, errors_, "UnknownAtom");
            if (auto a = resolve.action(raw))
                result.value = *a;
        } catch (const SyntaxError&) {
        }
        result.errors = std::move(errors_);
        if (!result.errors.empty())
            result.value.reset();
        return result;
    }

private:
    const model::DomainSpec& spec_;
};

// ---------------------------------------------------------------------------
// Rendering

std::string render_condition(const model::Condition& c) {
    std::string out;
    for (std::size_t i = 0; i < c.literals.size(); ++i) {
        if (i)
            out += " & ";
        out += c.literals[i].str();
    }
    return out;
}

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

ParseResult<model::DomainSpec> parse_domain(std::string_view text, const std::string& file) {
    return DomainParser(text, file).run();
}

ParseResult<std::vector<Scenario>> parse_scenarios(std::string_view text, const model::DomainSpec& spec,
                                                   const std::string& file) {
    return ScenarioParser(text, file, spec).run();
}

ParseResult<Scenario> parse_scenario(std::string_view text, const model::DomainSpec& spec, const std::string& file) {
    auto all = parse_scenarios(text, spec, file);
    ParseResult<Scenario> result;
    result.errors = std::move(all.errors);
    if (all.value) {
        if (all.value->size() == 1)
            result.value = std::move(all.value->front());
        else
            result.errors.push_back({SourceSpan{file, 1, 1, 0}, "ScenarioCount",
                                     "expected exactly one scenario, found " + std::to_string(all.value->size()), {}});
    }
    return result;
}

ParseResult<QueryExpr> parse_query(std::string_view text, const model::DomainSpec& spec) {
    return ExprParser(text, spec).query();
}

ParseResult<model::Literal> parse_goal(std::string_view text, const model::DomainSpec& spec) {
    return ExprParser(text, spec).goal();
}

ParseResult<model::ActionDecl> parse_action(std::string_view text, const model::DomainSpec& spec) {
    return ExprParser(text, spec).action();
}

std::string render_domain(const model::DomainSpec& spec) {
    std::ostringstream os;
    os << "# cpsf domain\n";
    for (const auto& a : spec.forest.aspects)
        os << "aspect " << a.str() << ".\n";

    // Leaves are enough: a path declares its prefixes.
    std::set<ConcernId> parents;
    for (const auto& [p, c] : spec.forest.edges)
        parents.insert(p);
    for (const auto& c : spec.forest.concerns)
        if (!spec.forest.aspects.count(c) && !parents.count(c))
            os << "concern " << c.str() << ".\n";

    for (const auto& p : spec.properties) {
        if (p.kind != PropKind::Property)
            continue;
        os << "property " << p.str();
        bool first = true;
        for (const auto& link : spec.links) {
            if (!(link.property == p))
                continue;
            os << (first ? " addresses " : ", ") << link.concern.str();
            first = false;
        }
        os << ".\n";
    }
    for (const auto& p : spec.properties)
        if (p.kind == PropKind::Configuration)
            os << "config " << p.str() << ".\n";
    for (const auto& a : spec.actions)
        if (a.origin == model::ActionOrigin::Declared)
            os << "action " << a.str() << ".\n";

    for (const auto& stmt : spec.statements) {
        std::visit(overloaded{
                       [&](const model::Impacts& s) {
                           os << render_condition(s.condition) << (s.sign == model::Sign::Pos ? " impacts+ " : " impacts- ")
                              << s.target.str() << ".\n";
                       },
                       [&](const model::Default& s) {
                           os << "default " << model::to_string(s.target) << " = " << (s.value ? "true" : "false")
                              << ".\n";
                       },
                       [&](const model::Causes& s) {
                           os << s.action.str() << " causes " << (s.effect_positive ? "" : "-") << s.effect.str();
                           if (!s.condition.empty())
                               os << " if " << render_condition(s.condition);
                           os << ".\n";
                       },
                       [&](const model::Triggers& s) {
                           os << render_condition(s.condition) << " triggers " << s.action.str() << ".\n";
                       },
                   },
                   stmt);
    }
    return os.str();
}

std::string render_scenario(const Scenario& scenario) {
    std::ostringstream os;
    os << "scenario " << scenario.name << " {\n";
    for (const auto& [p, v] : scenario.observations)
        os << "  obs " << p.str() << " = " << (v ? "true" : "false") << ".\n";
    std::vector<Occurrence> hist(scenario.history.begin(), scenario.history.end());
    std::sort(hist.begin(), hist.end(), [](const Occurrence& a, const Occurrence& b) {
        return std::tie(a.step, a.action) < std::tie(b.step, b.action);
    });
    for (const auto& occ : hist)
        os << "  history " << occ.action.str() << " @ " << occ.step << ".\n";
    os << "}\n";
    return os.str();
}

} // namespace cpsf::lang
