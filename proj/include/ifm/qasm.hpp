// Copyright 2026 The ifm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifm/circuit.hpp"

// Minimal OpenQASM 2.0 subset:
//
//   OPENQASM 2.0;
//   include "qelib1.inc";            (accepted, not resolved)
//   qreg q[n];  creg c[n];
//   u1(l) a;  u2(p,l) a;  u3(t,p,l) a;  U(t,p,l) a;  x a;  h a;
//   cx a,b;  CX a,b;
//   measure a -> b;
//   if(creg==v) <gate statement>;   (creg must be a 1-bit register)
//
// Gate parameters are arithmetic over numbers and `pi`. Arguments must be
// indexed (`q[0]`); whole-register broadcast is not supported.

namespace ifm::qasm {

/// Parse failure with 1-based source position.
class QasmError : public std::invalid_argument {
  public:
    QasmError(std::size_t line, std::size_t column, const std::string &what)
        : std::invalid_argument("line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": " + what),
          line_{line}, column_{column} {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string gate_call(const Unitary &u) {
    const Gate &g = u.gate;
    std::string text{gate_name(g.kind)};
    switch (g.kind) {
    case GateKind::u1:
        text += "(" + format_real(g.lambda) + ")";
        break;
    case GateKind::u2:
        text += "(" + format_real(g.phi) + "," + format_real(g.lambda) + ")";
        break;
    case GateKind::u3:
        text += "(" + format_real(g.theta) + "," + format_real(g.phi) + "," +
                format_real(g.lambda) + ")";
        break;
    case GateKind::x:
    case GateKind::h:
        break;
    }
    return text + " q[" + std::to_string(u.qubit) + "];";
}

inline std::string gate_call(const Cnot &c) {
    return "cx q[" + std::to_string(c.control) + "],q[" + std::to_string(c.target) + "];";
}

} // namespace detail

/**
 * Writes `circuit` as OpenQASM 2.0 text. Qubits live in one register `q`;
 * each cbit k gets its own 1-bit register `ck` so that single-bit
 * conditions can be expressed with `if(ck==v)`.
 */
inline std::string emit(const Circuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    if (!circuit.label().empty()) {
        std::string label = circuit.label();
        for (char &ch : label) {
            if (ch == '\n' || ch == '\r') {
                ch = ' ';
            }
        }
        out << "// " << label << "\n";
    }
    out << "qreg q[" << circuit.num_qubits() << "];\n";
    for (std::size_t k = 0; k < circuit.num_cbits(); ++k) {
        out << "creg c" << k << "[1];\n";
    }
    for (const Instruction &instr : circuit.instructions()) {
        std::visit(overloaded{
                       [&](const Unitary &u) { out << detail::gate_call(u) << "\n"; },
                       [&](const Cnot &c) { out << detail::gate_call(c) << "\n"; },
                       [&](const Measure &m) {
                           out << "measure q[" << m.qubit << "] -> c" << m.cbit << "[0];\n";
                       },
                       [&](const Conditional &c) {
                           out << "if(c" << c.cbit << "==" << (c.required ? 1 : 0) << ") ";
                           std::visit([&](const auto &op) { out << detail::gate_call(op); }, c.op);
                           out << "\n";
                       },
                   },
                   instr);
    }
    return out.str();
}

namespace detail {

enum class TokenKind { identifier, integer, real, string, symbol, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_{src} {}

    std::vector<Token> tokenize() {
        std::vector<Token> tokens;
        for (;;) {
            skip_space_and_comments();
            Token tok;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= src_.size()) {
                tokens.push_back(tok);
                return tokens;
            }
            const char ch = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                tok.kind = TokenKind::identifier;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                              src_[pos_] == '_')) {
                    tok.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(ch)) ||
                       (ch == '.' && pos_ + 1 < src_.size() &&
                        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                lex_number(tok);
            } else if (ch == '"') {
                tok.kind = TokenKind::string;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    tok.text += advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw QasmError(tok.line, tok.column, "unterminated string");
                }
                advance();
            } else if (match2('-', '>') || match2('=', '=')) {
                tok.kind = TokenKind::symbol;
                tok.text += advance();
                tok.text += advance();
            } else if (std::string_view(";,[]()+-*/{}").find(ch) != std::string_view::npos) {
                tok.kind = TokenKind::symbol;
                tok.text += advance();
            } else {
                throw QasmError(tok.line, tok.column,
                                std::string("unexpected character '") + ch + "'");
            }
            tokens.push_back(std::move(tok));
        }
    }

  private:
    char advance() {
        const char ch = src_[pos_++];
        if (ch == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return ch;
    }

    [[nodiscard]] bool match2(char a, char b) const {
        return pos_ + 1 < src_.size() && src_[pos_] == a && src_[pos_ + 1] == b;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (match2('/', '/')) {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    void lex_number(Token &tok) {
        tok.kind = TokenKind::integer;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                tok.text += advance();
            }
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            tok.kind = TokenKind::real;
            tok.text += advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            tok.kind = TokenKind::real;
            tok.text += advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                tok.text += advance();
            }
            const std::size_t before = tok.text.size();
            digits();
            if (tok.text.size() == before) {
                throw QasmError(tok.line, tok.column, "malformed exponent in number");
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct Register {
    std::size_t offset = 0;
    std::size_t size = 0;
};

struct Located {
    Instruction instr;
    std::size_t line;
    std::size_t column;
};

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_{std::move(tokens)} {}

    Circuit parse() {
        parse_header();
        while (peek().kind != TokenKind::end) {
            parse_statement();
        }
        if (num_qubits_ == 0) {
            fail(peek(), "no quantum register declared");
        }
        Circuit circuit(num_qubits_, num_cbits_);
        for (Located &l : body_) {
            try {
                circuit.append(std::move(l.instr));
            } catch (const std::exception &e) {
                throw QasmError(l.line, l.column, e.what());
            }
        }
        return circuit;
    }

  private:
    [[noreturn]] static void fail(const Token &at, const std::string &what) {
        throw QasmError(at.line, at.column, what);
    }

    const Token &peek() const { return tokens_[pos_]; }

    const Token &next() {
        const Token &t = tokens_[pos_];
        if (t.kind != TokenKind::end) {
            ++pos_;
        }
        return t;
    }

    bool accept(std::string_view symbol) {
        if (peek().kind == TokenKind::symbol && peek().text == symbol) {
            ++pos_;
            return true;
        }
        return false;
    }

    const Token &expect(std::string_view symbol) {
        const Token &t = peek();
        if (t.kind != TokenKind::symbol || t.text != symbol) {
            fail(t, "expected '" + std::string(symbol) + "'" + found(t));
        }
        return next();
    }

    const Token &expect_identifier() {
        const Token &t = peek();
        if (t.kind != TokenKind::identifier) {
            fail(t, "expected identifier" + found(t));
        }
        return next();
    }

    std::size_t expect_integer() {
        const Token &t = peek();
        if (t.kind != TokenKind::integer) {
            fail(t, "expected integer" + found(t));
        }
        next();
        try {
            return static_cast<std::size_t>(std::stoull(t.text));
        } catch (const std::exception &) {
            fail(t, "integer out of range");
        }
    }

    static double to_double(const Token &t) {
        try {
            return std::stod(t.text);
        } catch (const std::exception &) {
            fail(t, "number out of range");
        }
    }

    static std::string found(const Token &t) {
        return t.kind == TokenKind::end ? ", found end of input" : ", found '" + t.text + "'";
    }

    void parse_header() {
        const Token &t = peek();
        if (t.kind != TokenKind::identifier || t.text != "OPENQASM") {
            fail(t, "expected 'OPENQASM 2.0;' header");
        }
        next();
        const Token &ver = peek();
        if ((ver.kind != TokenKind::real && ver.kind != TokenKind::integer) ||
            to_double(ver) != 2.0) {
            fail(ver, "only OPENQASM 2.0 is supported");
        }
        next();
        expect(";");
    }

    void parse_statement() {
        const Token &head = expect_identifier();
        const std::string &word = head.text;
        if (word == "include") {
            const Token &file = peek();
            if (file.kind != TokenKind::string) {
                fail(file, "expected file name string" + found(file));
            }
            next();
            expect(";");
        } else if (word == "qreg" || word == "creg") {
            declare(word == "qreg");
        } else if (word == "measure") {
            const std::size_t q = argument(qregs_, "quantum");
            expect("->");
            const std::size_t c = argument(cregs_, "classical");
            expect(";");
            body_.push_back({Measure{q, c}, head.line, head.column});
        } else if (word == "if") {
            parse_if(head);
        } else if (word == "barrier" || word == "reset" || word == "gate" || word == "opaque") {
            fail(head, "'" + word + "' is not supported");
        } else {
            GateOp op = gate_statement(head);
            std::visit([&](auto &&g) { body_.push_back({g, head.line, head.column}); }, op);
        }
    }

    void declare(bool quantum) {
        const Token &name = expect_identifier();
        expect("[");
        const Token &size_tok = peek();
        const std::size_t size = expect_integer();
        expect("]");
        expect(";");
        if (size == 0) {
            fail(size_tok, "register size must be positive");
        }
        if (qregs_.contains(name.text) || cregs_.contains(name.text)) {
            fail(name, "register '" + name.text + "' already declared");
        }
        std::size_t &total = quantum ? num_qubits_ : num_cbits_;
        const std::size_t limit = quantum ? kMaxQubits : kMaxCbits;
        if (size > limit || total + size > limit) {
            fail(size_tok, std::string(quantum ? "qubit" : "classical bit") +
                               " count exceeds limit of " + std::to_string(limit));
        }
        (quantum ? qregs_ : cregs_)[name.text] = Register{total, size};
        total += size;
    }

    std::size_t argument(const std::map<std::string, Register> &regs, const char *what) {
        const Token &name = expect_identifier();
        auto it = regs.find(name.text);
        if (it == regs.end()) {
            fail(name, std::string("undeclared ") + what + " register '" + name.text + "'");
        }
        if (peek().kind != TokenKind::symbol || peek().text != "[") {
            fail(peek(), "register arguments must be indexed" + found(peek()));
        }
        next();
        const Token &idx_tok = peek();
        const std::size_t idx = expect_integer();
        expect("]");
        if (idx >= it->second.size) {
            fail(idx_tok, "index " + std::to_string(idx) + " out of range for register '" +
                              name.text + "[" + std::to_string(it->second.size) + "]'");
        }
        return it->second.offset + idx;
    }

    void parse_if(const Token &head) {
        expect("(");
        const Token &name = expect_identifier();
        auto it = cregs_.find(name.text);
        if (it == cregs_.end()) {
            fail(name, "if references undeclared classical register '" + name.text + "'");
        }
        if (it->second.size != 1) {
            fail(name, "conditions are only supported on 1-bit classical registers");
        }
        expect("==");
        const Token &val_tok = peek();
        const std::size_t value = expect_integer();
        if (value > 1) {
            fail(val_tok, "a 1-bit register can only equal 0 or 1");
        }
        expect(")");
        const Token &gate_head = expect_identifier();
        if (gate_head.text == "measure" || gate_head.text == "if") {
            fail(gate_head, "only gates may be conditioned");
        }
        GateOp op = gate_statement(gate_head);
        body_.push_back({Conditional{it->second.offset, value == 1, std::move(op)}, head.line,
                         head.column});
    }

    GateOp gate_statement(const Token &name) {
        const std::string &g = name.text;
        std::vector<double> params;
        if (accept("(")) {
            if (!accept(")")) {
                do {
                    params.push_back(expression());
                } while (accept(","));
                expect(")");
            }
        }
        std::vector<std::size_t> args;
        do {
            args.push_back(argument(qregs_, "quantum"));
        } while (accept(","));
        expect(";");

        auto require = [&](std::size_t np, std::size_t na) {
            if (params.size() != np) {
                fail(name, "gate '" + g + "' takes " + std::to_string(np) + " parameter(s)");
            }
            if (args.size() != na) {
                fail(name, "gate '" + g + "' takes " + std::to_string(na) + " qubit argument(s)");
            }
        };
        if (g == "cx" || g == "CX") {
            require(0, 2);
            if (args[0] == args[1]) {
                fail(name, "cnot control and target must differ");
            }
            return Cnot{args[0], args[1]};
        }
        Gate gate;
        if (g == "u3" || g == "U") {
            require(3, 1);
            gate = Gate::u3(params[0], params[1], params[2]);
        } else if (g == "u2") {
            require(2, 1);
            gate = Gate::u2(params[0], params[1]);
        } else if (g == "u1") {
            require(1, 1);
            gate = Gate::u1(params[0]);
        } else if (g == "x") {
            require(0, 1);
            gate = Gate::x();
        } else if (g == "h") {
            require(0, 1);
            gate = Gate::h();
        } else {
            fail(name, "unknown gate '" + g + "'");
        }
        return Unitary{gate, args[0]};
    }

    double expression() {
        double v = term();
        for (;;) {
            if (accept("+")) {
                v += term();
            } else if (accept("-")) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = factor();
        for (;;) {
            if (accept("*")) {
                v *= factor();
            } else if (peek().kind == TokenKind::symbol && peek().text == "/") {
                const Token &slash = next();
                const double d = factor();
                if (d == 0.0) {
                    fail(slash, "division by zero in parameter");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    double factor() {
        if (accept("-")) {
            return -factor();
        }
        if (accept("+")) {
            return factor();
        }
        if (accept("(")) {
            const double v = expression();
            expect(")");
            return v;
        }
        const Token &t = peek();
        if (t.kind == TokenKind::integer || t.kind == TokenKind::real) {
            next();
            const double v = to_double(t);
            if (!std::isfinite(v)) {
                fail(t, "parameter is not finite");
            }
            return v;
        }
        if (t.kind == TokenKind::identifier && t.text == "pi") {
            next();
            return std::numbers::pi;
        }
        fail(t, "expected parameter expression" + found(t));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::size_t num_qubits_ = 0;
    std::size_t num_cbits_ = 0;
    std::vector<Located> body_;
};

} // namespace detail

/// Parses the supported OpenQASM 2.0 subset. Every failure is a QasmError
/// carrying the offending line and column.
inline Circuit parse(std::string_view text) {
    return detail::Parser(detail::Lexer(text).tokenize()).parse();
}

} // namespace ifm::qasm
