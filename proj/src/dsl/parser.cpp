/*
 * Copyright 2026 The CodePlan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "codeplan/dsl/parser.hpp"

#include <optional>
#include <utility>
#include <vector>

#include "codeplan/dsl/lexer.hpp"

namespace codeplan::dsl {

std::string_view to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::BadHeader: return "BadHeader";
        case ParseErrorKind::BadIndent: return "BadIndent";
        case ParseErrorKind::UnknownConstruct: return "UnknownConstruct";
        case ParseErrorKind::DanglingElse: return "DanglingElse";
        case ParseErrorKind::EmptyBody: return "EmptyBody";
    }
    return "?";
}

ParseError::ParseError(ParseErrorKind kind, int line, std::string detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) +
                         (detail.empty() ? std::string{} : ": " + detail)),
      kind_(kind),
      line_(line),
      detail_(std::move(detail)) {}

namespace {

struct LogicalLine {
    int line = 0;
    int indent = 0;
    bool tab_indent = false;
    std::string text;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Net bracket depth change of a code line, ignoring brackets inside strings.
int bracket_delta(std::string_view s) {
    int depth = 0;
    char in_string = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == in_string) {
                in_string = 0;
            }
            continue;
        }
        if (c == '\'' || c == '"') in_string = c;
        else if (c == '(' || c == '[') ++depth;
        else if (c == ')' || c == ']') --depth;
    }
    return depth;
}

std::vector<LogicalLine> split_logical_lines(std::string_view source) {
    std::vector<std::string_view> physical;
    std::size_t start = 0;
    while (start <= source.size()) {
        auto nl = source.find('\n', start);
        if (nl == std::string_view::npos) {
            physical.push_back(source.substr(start));
            break;
        }
        physical.push_back(source.substr(start, nl - start));
        start = nl + 1;
    }

    std::vector<LogicalLine> out;
    for (std::size_t i = 0; i < physical.size(); ++i) {
        std::string_view raw = physical[i];
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (trim(raw).empty()) continue;

        LogicalLine ll;
        ll.line = static_cast<int>(i) + 1;
        std::size_t j = 0;
        while (j < raw.size() && (raw[j] == ' ' || raw[j] == '\t')) {
            if (raw[j] == '\t') ll.tab_indent = true;
            ++j;
        }
        ll.indent = static_cast<int>(j);
        ll.text = std::string(trim(raw));

        if (ll.text.front() != '#') {
            int depth = bracket_delta(ll.text);
            while (depth > 0 && i + 1 < physical.size()) {
                ++i;
                std::string_view cont = trim(physical[i]);
                if (cont.empty()) continue;
                ll.text += ' ';
                ll.text += cont;
                depth += bracket_delta(cont);
            }
        }
        out.push_back(std::move(ll));
    }
    return out;
}

bool starts_with_else(std::string_view text) {
    if (text.substr(0, 4) != "else") return false;
    auto rest = trim(text.substr(4));
    return !rest.empty() && rest.front() == ':';
}

std::string_view after_colon(std::string_view text) {
    auto pos = text.find(':');
    return trim(text.substr(pos + 1));
}

class TokenStream {
public:
    TokenStream(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool at(TokenKind k) const { return peek().kind == k; }
    bool at_ident(std::string_view name) const {
        return peek().kind == TokenKind::Identifier && peek().text == name;
    }
    const Token& expect(TokenKind k, std::string_view what) {
        if (!at(k)) fail("expected " + std::string(what));
        return next();
    }
    void expect_end() {
        if (!at(TokenKind::End)) fail("unexpected trailing text");
    }
    std::size_t offset() const { return peek().offset; }

    [[noreturn]] void fail(const std::string& detail) const {
        throw ParseError(ParseErrorKind::UnknownConstruct, line_, detail);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int line_;
};

TokenStream lex(std::string_view text, int line) {
    auto toks = tokenize_line(text);
    if (!toks) throw ParseError(ParseErrorKind::UnknownConstruct, line, "cannot tokenize");
    return TokenStream(std::move(*toks), line);
}

Predicate parse_predicate_tokens(TokenStream& ts, bool allow_flags) {
    Predicate p;
    if (ts.at_ident("not")) {
        ts.next();
        p.negated = true;
    }
    auto resolve = [&](const std::string& name) {
        auto rel = relation_from_string(name);
        if (!rel || (!allow_flags && !is_plan_relation(*rel))) {
            ts.fail("unknown relation '" + name + "'");
        }
        return *rel;
    };
    if (ts.at(TokenKind::String)) {
        const Token& rel = ts.next();
        if (!ts.at_ident("to")) ts.fail("expected 'to' in predicate");
        ts.next();
        const Token& subj = ts.expect(TokenKind::String, "quoted subject");
        p.relation = resolve(rel.text);
        p.subject = subj.text;
        p.quote = subj.quote;
        p.form = PredicateForm::To;
        return p;
    }
    if (!ts.at(TokenKind::Identifier)) ts.fail("expected predicate");
    std::string first = ts.next().text;
    if (ts.at(TokenKind::Dot)) {
        ts.next();
        std::string method = ts.expect(TokenKind::Identifier, "method name").text;
        ts.expect(TokenKind::LParen, "'('");
        const Token& subj = ts.expect(TokenKind::String, "quoted probe");
        ts.expect(TokenKind::RParen, "')'");
        p.relation = resolve(method);
        p.owner = first;
        p.subject = subj.text;
        p.quote = subj.quote;
        p.form = PredicateForm::Method;
        return p;
    }
    ts.expect(TokenKind::LParen, "'('");
    if (ts.at(TokenKind::String)) {
        const Token& subj = ts.next();
        p.subject = subj.text;
        p.quote = subj.quote;
    } else if (allow_flags && ts.at(TokenKind::Identifier)) {
        p.subject = ts.next().text;
    } else {
        ts.fail("expected quoted subject");
    }
    ts.expect(TokenKind::RParen, "')'");
    p.relation = resolve(first);
    p.form = PredicateForm::Call;
    return p;
}

Condition parse_condition_tokens(TokenStream& ts) {
    std::size_t look = ts.at_ident("not") ? 1 : 0;
    const Token& a = ts.peek(look);
    const Token& b = ts.peek(look + 1);
    if (a.kind == TokenKind::Identifier &&
        (b.kind == TokenKind::Colon || b.kind == TokenKind::End)) {
        FlagRef f;
        if (look) {
            ts.next();
            f.negated = true;
        }
        f.name = ts.next().text;
        return Condition{f};
    }
    return Condition{parse_predicate_tokens(ts, false)};
}

Operand parse_operand(TokenStream& ts) {
    if (ts.at(TokenKind::String)) {
        const Token& t = ts.next();
        return Literal{t.text, t.quote};
    }
    if (ts.at(TokenKind::Integer)) {
        return Literal{ts.next().integer, '\''};
    }
    if (ts.at(TokenKind::Identifier)) {
        return VarRef{ts.next().text};
    }
    ts.fail("expected argument");
}

std::vector<Argument> parse_args(TokenStream& ts) {
    std::vector<Argument> args;
    ts.expect(TokenKind::LParen, "'('");
    if (ts.at(TokenKind::RParen)) {
        ts.next();
        return args;
    }
    while (true) {
        Argument a;
        if (ts.at(TokenKind::Identifier) && ts.peek(1).kind == TokenKind::Equals) {
            a.keyword = ts.next().text;
            ts.next();
        }
        a.value = parse_operand(ts);
        args.push_back(std::move(a));
        if (ts.at(TokenKind::Comma)) {
            ts.next();
            continue;
        }
        ts.expect(TokenKind::RParen, "')'");
        break;
    }
    return args;
}

Expr parse_expr(TokenStream& ts) {
    Expr e;
    if (ts.at(TokenKind::String) || ts.at(TokenKind::Integer)) {
        e.base = std::get<Literal>(parse_operand(ts));
    } else if (ts.at(TokenKind::Identifier)) {
        std::string name = ts.next().text;
        if (ts.at(TokenKind::Dot) && ts.peek(1).kind == TokenKind::Identifier &&
            ts.peek(2).kind == TokenKind::LParen) {
            ts.next();
            name += '.';
            name += ts.next().text;
        }
        if (ts.at(TokenKind::LParen)) {
            e.base = ActionCall{name, parse_args(ts)};
        } else {
            if (name.find('.') != std::string::npos) ts.fail("attribute access");
            e.base = VarRef{name};
        }
    } else {
        ts.fail("expected expression");
    }
    while (ts.at(TokenKind::LBracket)) {
        ts.next();
        PathElem pe;
        if (ts.at(TokenKind::Integer)) {
            pe.key = ts.next().integer;
        } else if (ts.at(TokenKind::String)) {
            const Token& t = ts.next();
            pe.key = t.text;
            pe.quote = t.quote;
        } else {
            ts.fail("expected index or key");
        }
        ts.expect(TokenKind::RBracket, "']'");
        e.path.push_back(std::move(pe));
    }
    return e;
}

bool is_reserved(std::string_view name) {
    return name == "assert" || name == "while" || name == "if" || name == "else" ||
           name == "def" || name == "break" || name == "not" || name == "to" ||
           name == "return" || name == "pass" || name == "for";
}

// Statements that fit on one line: comments, calls, bindings, final_answer.
Statement parse_simple(std::string_view text, int line) {
    text = trim(text);
    Statement st;
    st.line = line;
    if (text.empty()) throw ParseError(ParseErrorKind::UnknownConstruct, line, "empty statement");
    if (text.front() == '#') {
        st.node = Comment{std::string(trim(text.substr(1)))};
        return st;
    }
    auto ts = lex(text, line);
    if (!ts.at(TokenKind::Identifier)) ts.fail("expected statement");
    const std::string& head = ts.peek().text;
    if (head == "final_answer" && ts.peek(1).kind == TokenKind::LParen) {
        ts.next();
        ts.next();
        Expr value = parse_expr(ts);
        ts.expect(TokenKind::RParen, "')'");
        ts.expect_end();
        st.node = Return{std::move(value)};
        return st;
    }
    if (is_reserved(head)) ts.fail("'" + head + "' not allowed here");
    if (ts.peek(1).kind == TokenKind::Equals) {
        std::string target = ts.next().text;
        ts.next();
        Expr value = parse_expr(ts);
        ts.expect_end();
        st.node = Binding{std::move(target), std::move(value)};
        return st;
    }
    Expr e = parse_expr(ts);
    ts.expect_end();
    auto* call = std::get_if<ActionCall>(&e.base);
    if (!call || !e.path.empty()) ts.fail("expression statement is not a call");
    st.node = std::move(*call);
    return st;
}

class PlanParser {
public:
    explicit PlanParser(std::vector<LogicalLine> lines) : lines_(std::move(lines)) {}

    PlanAst parse() {
        if (lines_.empty()) throw ParseError(ParseErrorKind::BadHeader, 1, "no plan header");
        PlanAst plan;
        plan.name = parse_header(lines_.front());
        pos_ = 1;
        if (pos_ >= lines_.size() || lines_[pos_].indent == 0) {
            throw ParseError(ParseErrorKind::EmptyBody, lines_.front().line, plan.name);
        }
        const auto& first = lines_[pos_];
        if (first.tab_indent || (first.indent != 2 && first.indent != 4)) {
            throw ParseError(ParseErrorKind::BadIndent, first.line, "indent unit must be 2 or 4 spaces");
        }
        unit_ = first.indent;
        plan.body = parse_block(1);
        if (pos_ < lines_.size()) {
            throw ParseError(ParseErrorKind::UnknownConstruct, lines_[pos_].line,
                             "text after plan body");
        }
        return plan;
    }

private:
    static std::string parse_header(const LogicalLine& l) {
        std::string_view t = l.text;
        if (l.indent != 0 || t.substr(0, 4) != "def ") {
            throw ParseError(ParseErrorKind::BadHeader, l.line, "expected 'def <name>():'");
        }
        t.remove_prefix(4);
        t = trim(t);
        auto paren = t.find('(');
        if (paren == std::string_view::npos) {
            throw ParseError(ParseErrorKind::BadHeader, l.line, "missing '()'");
        }
        std::string_view name = trim(t.substr(0, paren));
        std::string_view rest = t.substr(paren);
        std::string compact;
        for (char c : rest) {
            if (c != ' ') compact.push_back(c);
        }
        if (compact != "():" || !is_plan_name(name)) {
            throw ParseError(ParseErrorKind::BadHeader, l.line, "expected 'def <name>():'");
        }
        return std::string(name);
    }

    int level_of(const LogicalLine& l) const {
        if (l.tab_indent || l.indent % unit_ != 0) {
            throw ParseError(ParseErrorKind::BadIndent, l.line, "inconsistent indentation");
        }
        int level = l.indent / unit_;
        if (level > kMaxNestingDepth) {
            throw ParseError(ParseErrorKind::BadIndent, l.line, "nesting deeper than 4 levels");
        }
        return level;
    }

    bool has_line_at(int level) const {
        return pos_ < lines_.size() && level_of(lines_[pos_]) == level;
    }

    Block parse_block(int level) {
        Block out;
        while (pos_ < lines_.size()) {
            int lv = level_of(lines_[pos_]);
            if (lv < level) break;
            if (lv > level) {
                throw ParseError(ParseErrorKind::BadIndent, lines_[pos_].line, "unexpected indent");
            }
            out.push_back(parse_statement(level));
        }
        return out;
    }

    Block parse_nested_block(int level, int header_line) {
        if (!has_line_at(level)) {
            throw ParseError(ParseErrorKind::BadIndent, header_line, "expected an indented block");
        }
        return parse_block(level);
    }

    // Handles `else: stmt` or `else:` + block on the current line.
    Block parse_else(int else_level) {
        const LogicalLine& l = lines_[pos_++];
        std::string_view rest = after_colon(l.text);
        if (!rest.empty()) {
            Block b;
            b.push_back(parse_simple(rest, l.line));
            return b;
        }
        return parse_nested_block(else_level + 1, l.line);
    }

    Statement parse_statement(int level) {
        const LogicalLine& l = lines_[pos_];
        std::string_view text = l.text;
        if (text.front() == '#') {
            ++pos_;
            return parse_simple(text, l.line);
        }
        if (starts_with_else(text)) {
            throw ParseError(ParseErrorKind::DanglingElse, l.line, "'else' without assert or if");
        }
        auto ts = lex(text, l.line);
        if (ts.at_ident("assert")) return parse_assert(ts, l, level);
        if (ts.at_ident("while")) return parse_while(ts, l, level);
        if (ts.at_ident("if")) return parse_if(ts, l, level);
        ++pos_;
        return parse_simple(text, l.line);
    }

    Statement parse_assert(TokenStream& ts, const LogicalLine& l, int level) {
        ts.next();
        ts.expect(TokenKind::LParen, "'('");
        AssertRecover ar;
        ar.predicate = parse_predicate_tokens(ts, false);
        ts.expect(TokenKind::RParen, "')'");
        bool inline_else = false;
        if (ts.at_ident("else")) {
            ts.next();
            std::size_t colon = ts.offset();
            ts.expect(TokenKind::Colon, "':'");
            std::string_view rest = trim(std::string_view(l.text).substr(colon + 1));
            if (rest.empty()) {
                ++pos_;
                ar.recovery = parse_nested_block(level + 1, l.line);
                return Statement{std::move(ar), l.line};
            }
            ar.recovery.push_back(parse_simple(rest, l.line));
            inline_else = true;
        } else {
            ts.expect_end();
        }
        ++pos_;
        if (!inline_else && pos_ < lines_.size() && starts_with_else(lines_[pos_].text)) {
            int lv = level_of(lines_[pos_]);
            if (lv == level || lv == level + 1) ar.recovery = parse_else(lv);
        }
        return Statement{std::move(ar), l.line};
    }

    static bool is_break_clause(std::string_view text, int line, std::optional<Condition>& out) {
        auto toks = tokenize_line(text);
        if (!toks || toks->size() < 4) return false;
        const auto& v = *toks;
        if (v[v.size() - 2].kind != TokenKind::Identifier || v[v.size() - 2].text != "break" ||
            v[v.size() - 3].kind != TokenKind::Colon || v.front().text != "if") {
            return false;
        }
        TokenStream ts(std::vector<Token>(v.begin(), v.end()), line);
        ts.next();
        out = parse_condition_tokens(ts);
        ts.expect(TokenKind::Colon, "':'");
        ts.next();
        ts.expect_end();
        return true;
    }

    Statement parse_while(TokenStream& ts, const LogicalLine& l, int level) {
        ts.next();
        Loop loop;
        loop.guard = parse_predicate_tokens(ts, false);
        ts.expect(TokenKind::Colon, "':'");
        ts.expect_end();
        ++pos_;
        const int inner = level + 1;
        if (!has_line_at(inner)) {
            throw ParseError(ParseErrorKind::BadIndent, l.line, "expected an indented block");
        }
        while (pos_ < lines_.size()) {
            int lv = level_of(lines_[pos_]);
            if (lv < inner) break;
            if (lv > inner) {
                throw ParseError(ParseErrorKind::BadIndent, lines_[pos_].line, "unexpected indent");
            }
            std::optional<Condition> brk;
            if (is_break_clause(lines_[pos_].text, lines_[pos_].line, brk)) {
                int bl = lines_[pos_].line;
                ++pos_;
                if (pos_ < lines_.size() && level_of(lines_[pos_]) >= inner) {
                    throw ParseError(ParseErrorKind::UnknownConstruct, bl,
                                     "break clause must end the loop body");
                }
                loop.break_when = std::move(brk);
                break;
            }
            loop.body.push_back(parse_statement(inner));
        }
        if (loop.body.empty()) {
            throw ParseError(ParseErrorKind::BadIndent, l.line, "loop body is empty");
        }
        return Statement{std::move(loop), l.line};
    }

    Statement parse_if(TokenStream& ts, const LogicalLine& l, int level) {
        ts.next();
        Conditional c;
        c.condition = parse_condition_tokens(ts);
        std::size_t colon = ts.offset();
        ts.expect(TokenKind::Colon, "':'");
        std::string_view rest = trim(std::string_view(l.text).substr(colon + 1));
        ++pos_;
        if (rest.empty()) {
            c.then_block = parse_nested_block(level + 1, l.line);
        } else {
            if (rest == "break") {
                throw ParseError(ParseErrorKind::UnknownConstruct, l.line, "'break' outside a loop");
            }
            c.then_block.push_back(parse_simple(rest, l.line));
        }
        if (pos_ < lines_.size() && starts_with_else(lines_[pos_].text) &&
            level_of(lines_[pos_]) == level) {
            c.else_block = parse_else(level);
        }
        return Statement{std::move(c), l.line};
    }

    std::vector<LogicalLine> lines_;
    std::size_t pos_ = 0;
    int unit_ = 4;
};

}  // namespace

PlanAst parse_plan(std::string_view source) {
    return PlanParser(split_logical_lines(source)).parse();
}

PlanAst parse_completion(std::string_view completion, std::string_view header) {
    std::string cleaned;
    std::size_t start = 0;
    while (start <= completion.size()) {
        auto nl = completion.find('\n', start);
        std::string_view line = completion.substr(start, nl == std::string_view::npos ? nl : nl - start);
        if (trim(line).substr(0, 3) != "```") {
            cleaned += line;
            cleaned += '\n';
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    std::string_view body = cleaned;
    std::size_t first = body.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && body.substr(first, 4) == "def ") {
        return parse_plan(body);
    }
    std::string full(header);
    full += '\n';
    full += cleaned;
    return parse_plan(full);
}

Predicate parse_predicate(std::string_view text, bool allow_state_flags) {
    auto ts = lex(trim(text), 1);
    Predicate p = parse_predicate_tokens(ts, allow_state_flags);
    ts.expect_end();
    return p;
}

}  // namespace codeplan::dsl
