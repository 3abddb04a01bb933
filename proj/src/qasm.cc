// Copyright 2026 The qfid Authors
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

#include "qfid/qasm.h"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include "qfid/error.h"

namespace qfid {

QasmSyntaxError::QasmSyntaxError(std::size_t line, std::size_t column, std::string expected, const std::string &detail)
    : Error(
          ErrorStage::PARSE,
          "SyntaxError at line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected " +
              expected + (detail.empty() ? "" : " (" + detail + ")")),
      line(line),
      column(column),
      expected(std::move(expected)) {
}

UnknownGateError::UnknownGateError(std::string name)
    : Error(ErrorStage::PARSE, "UnknownGate: '" + name + "'"), name(std::move(name)) {
}

namespace {

enum class Tok {
    IDENT,
    INT,
    REAL,
    STRING,
    SYMBOL,
    ARROW,
    END,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token &t) {
    switch (t.kind) {
        case Tok::END:
            return "end of input";
        case Tok::STRING:
            return "string \"" + t.text + "\"";
        default:
            return "'" + t.text + "'";
    }
}

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); k++) {
            if (src[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
            i++;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        std::size_t start = i, tl = line, tc = col;
        if (is_ident_start(c)) {
            while (i < src.size() && (is_ident_start(src[i]) || is_digit(src[i]))) {
                advance(1);
            }
            out.push_back({Tok::IDENT, std::string(src.substr(start, i - start)), tl, tc});
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            bool real = false;
            while (i < src.size() && is_digit(src[i])) {
                advance(1);
            }
            if (i < src.size() && src[i] == '.') {
                real = true;
                advance(1);
                while (i < src.size() && is_digit(src[i])) {
                    advance(1);
                }
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t k = i + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) {
                    k++;
                }
                if (k < src.size() && is_digit(src[k])) {
                    real = true;
                    advance(k - i);
                    while (i < src.size() && is_digit(src[i])) {
                        advance(1);
                    }
                }
            }
            out.push_back({real ? Tok::REAL : Tok::INT, std::string(src.substr(start, i - start)), tl, tc});
            continue;
        }
        if (c == '"') {
            advance(1);
            std::size_t s = i;
            while (i < src.size() && src[i] != '"' && src[i] != '\n') {
                advance(1);
            }
            if (i >= src.size() || src[i] != '"') {
                throw QasmSyntaxError(tl, tc, "closing '\"'");
            }
            std::string text(src.substr(s, i - s));
            advance(1);
            out.push_back({Tok::STRING, std::move(text), tl, tc});
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            advance(2);
            out.push_back({Tok::ARROW, "->", tl, tc});
            continue;
        }
        static constexpr std::string_view SYMBOLS = ";,[](){}+-*/^=<>!&|%~@:";
        if (SYMBOLS.find(c) != std::string_view::npos) {
            advance(1);
            out.push_back({Tok::SYMBOL, std::string(1, c), tl, tc});
            continue;
        }
        std::string shown;
        if (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f) {
            shown = std::string(1, c);
        } else {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\x%02x", static_cast<unsigned>(static_cast<unsigned char>(c)));
            shown = buf;
        }
        throw QasmSyntaxError(tl, tc, "a token", "unexpected character " + shown);
    }
    out.push_back({Tok::END, "", line, col});
    return out;
}

struct Register {
    uint32_t offset;
    uint32_t width;
};

/// A resolved argument: a single flat index, or a whole register.
struct Arg {
    std::vector<uint32_t> indices;
    bool whole_register;
};

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {
    }

    Circuit run() {
        parse_header();
        while (peek().kind != Tok::END) {
            parse_statement();
        }
        Circuit c(num_qubits_, num_clbits_);
        for (auto &op : ops_) {
            c.append_op(op);
        }
        return c;
    }

   private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, Register, std::less<>> qregs_;
    std::map<std::string, Register, std::less<>> cregs_;
    uint32_t num_qubits_ = 0;
    uint32_t num_clbits_ = 0;
    std::vector<Operation> ops_;
    std::size_t expr_depth_ = 0;

    static constexpr std::size_t MAX_EXPR_DEPTH = 200;

    struct DepthGuard {
        Parser &p;
        DepthGuard(Parser &p, const Token &at) : p(p) {
            if (++p.expr_depth_ > MAX_EXPR_DEPTH) {
                --p.expr_depth_;
                throw QasmSyntaxError(at.line, at.column, "a shallower expression", "nesting too deep");
            }
        }
        ~DepthGuard() {
            --p.expr_depth_;
        }
    };

    const Token &peek() const {
        return toks_[pos_];
    }
    const Token &next() {
        const Token &t = toks_[pos_];
        if (t.kind != Tok::END) {
            pos_++;
        }
        return t;
    }
    [[noreturn]] void fail(const Token &at, const std::string &expected) {
        throw QasmSyntaxError(at.line, at.column, expected, "found " + describe(at));
    }
    bool at_symbol(char s) const {
        return peek().kind == Tok::SYMBOL && peek().text[0] == s;
    }
    void expect_symbol(char s) {
        if (!at_symbol(s)) {
            fail(peek(), std::string("'") + s + "'");
        }
        next();
    }
    const Token &expect(Tok kind, const std::string &expected) {
        if (peek().kind != kind) {
            fail(peek(), expected);
        }
        return next();
    }
    std::string where(const Token &t) const {
        return " (line " + std::to_string(t.line) + ")";
    }

    uint64_t parse_uint(const Token &t) {
        uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            throw QasmSyntaxError(t.line, t.column, "an integer that fits in 64 bits");
        }
        return v;
    }

    void parse_header() {
        const Token &kw = peek();
        if (kw.kind != Tok::IDENT || kw.text != "OPENQASM") {
            fail(kw, "'OPENQASM'");
        }
        next();
        const Token &ver = peek();
        if (ver.kind != Tok::REAL && ver.kind != Tok::INT) {
            fail(ver, "version '2.0'");
        }
        next();
        if (ver.text == "3" || ver.text.starts_with("3.")) {
            throw UnsupportedFeatureError("OpenQASM " + ver.text + where(ver));
        }
        if (ver.text != "2.0" && ver.text != "2") {
            fail(ver, "version '2.0'");
        }
        expect_symbol(';');
    }

    void parse_statement() {
        const Token &t = peek();
        if (t.kind != Tok::IDENT) {
            fail(t, "a statement");
        }
        const std::string &w = t.text;
        if (w == "include") {
            next();
            const Token &file = expect(Tok::STRING, "an include file name");
            if (file.text != "qelib1.inc") {
                throw UnsupportedFeatureError("include \"" + file.text + "\"" + where(file));
            }
            expect_symbol(';');
        } else if (w == "qreg" || w == "creg") {
            parse_declaration(w == "qreg");
        } else if (w == "measure") {
            parse_measure();
        } else if (w == "barrier") {
            parse_barrier();
        } else if (w == "gate" || w == "opaque") {
            throw UnsupportedFeatureError("custom gate definitions" + where(t));
        } else if (w == "if") {
            throw UnsupportedFeatureError("classically controlled operations" + where(t));
        } else if (w == "reset") {
            throw UnsupportedFeatureError("reset" + where(t));
        } else if (
            w == "qubit" || w == "bit" || w == "def" || w == "for" || w == "while" || w == "let" || w == "const" ||
            w == "input" || w == "output" || w == "OPENQASM" || w == "gphase" || w == "ctrl" || w == "inv" ||
            w == "pow" || w == "box" || w == "defcal" || w == "cal") {
            throw UnsupportedFeatureError("OpenQASM 3 syntax '" + w + "'" + where(t));
        } else {
            parse_gate();
        }
    }

    void parse_declaration(bool quantum) {
        next();
        const Token &name = expect(Tok::IDENT, "a register name");
        expect_symbol('[');
        const Token &width_tok = expect(Tok::INT, "a register width");
        uint64_t width = parse_uint(width_tok);
        expect_symbol(']');
        expect_symbol(';');
        if (qregs_.contains(name.text) || cregs_.contains(name.text)) {
            throw RegisterError("register '" + name.text + "' declared twice" + where(name));
        }
        if (width < 1) {
            throw RegisterError("register '" + name.text + "' must have width >= 1" + where(name));
        }
        uint32_t &total = quantum ? num_qubits_ : num_clbits_;
        if (width > MAX_QASM_BITS - total) {
            throw RegisterError(
                "declaring '" + name.text + "' exceeds the limit of " + std::to_string(MAX_QASM_BITS) + " bits" +
                where(name));
        }
        (quantum ? qregs_ : cregs_)[name.text] = Register{total, static_cast<uint32_t>(width)};
        total += static_cast<uint32_t>(width);
    }

    Arg parse_arg(bool quantum) {
        const Token &name = expect(Tok::IDENT, quantum ? "a qubit argument" : "a classical bit argument");
        auto &regs = quantum ? qregs_ : cregs_;
        auto it = regs.find(name.text);
        if (it == regs.end()) {
            auto &other = quantum ? cregs_ : qregs_;
            if (other.contains(name.text)) {
                throw RegisterError(
                    "'" + name.text + "' is a " + (quantum ? "classical" : "quantum") + " register" + where(name));
            }
            throw RegisterError("undeclared register '" + name.text + "'" + where(name));
        }
        const Register reg = it->second;
        if (at_symbol('[')) {
            next();
            const Token &idx_tok = expect(Tok::INT, "an index");
            uint64_t idx = parse_uint(idx_tok);
            expect_symbol(']');
            if (idx >= reg.width) {
                throw RegisterError(
                    "index " + std::to_string(idx) + " out of range " + std::to_string(reg.width) + " for '" +
                    name.text + "'" + where(idx_tok));
            }
            return Arg{{reg.offset + static_cast<uint32_t>(idx)}, false};
        }
        Arg a{{}, true};
        a.indices.reserve(reg.width);
        for (uint32_t k = 0; k < reg.width; k++) {
            a.indices.push_back(reg.offset + k);
        }
        return a;
    }

    std::vector<Arg> parse_qubit_args() {
        std::vector<Arg> args;
        args.push_back(parse_arg(true));
        while (at_symbol(',')) {
            next();
            args.push_back(parse_arg(true));
        }
        return args;
    }

    // expr := term (('+'|'-') term)*
    double parse_expr() {
        double v = parse_term();
        while (at_symbol('+') || at_symbol('-')) {
            char op = next().text[0];
            double rhs = parse_term();
            v = op == '+' ? v + rhs : v - rhs;
        }
        return v;
    }

    // term := unary (('*'|'/') unary)*
    double parse_term() {
        double v = parse_unary();
        while (at_symbol('*') || at_symbol('/')) {
            const Token &op = next();
            double rhs = parse_unary();
            if (op.text[0] == '*') {
                v *= rhs;
            } else {
                if (rhs == 0) {
                    throw QasmSyntaxError(op.line, op.column, "a nonzero divisor", "division by zero");
                }
                v /= rhs;
            }
        }
        return v;
    }

    double parse_unary() {
        DepthGuard guard(*this, peek());
        if (at_symbol('-')) {
            next();
            return -parse_unary();
        }
        if (at_symbol('+')) {
            next();
            return parse_unary();
        }
        return parse_primary();
    }

    double parse_primary() {
        const Token &t = peek();
        if (t.kind == Tok::INT || t.kind == Tok::REAL) {
            next();
            double v = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(v)) {
                throw QasmSyntaxError(t.line, t.column, "a finite number");
            }
            return v;
        }
        if (t.kind == Tok::IDENT && t.text == "pi") {
            next();
            return std::numbers::pi;
        }
        if (at_symbol('(')) {
            next();
            double v = parse_expr();
            expect_symbol(')');
            return v;
        }
        fail(t, "a number, 'pi' or '('");
    }

    std::vector<double> parse_params() {
        std::vector<double> params;
        if (!at_symbol('(')) {
            return params;
        }
        next();
        const Token &start = peek();
        params.push_back(parse_expr());
        while (at_symbol(',')) {
            next();
            params.push_back(parse_expr());
        }
        expect_symbol(')');
        for (double p : params) {
            if (!std::isfinite(p)) {
                throw QasmSyntaxError(start.line, start.column, "finite parameters");
            }
        }
        return params;
    }

    void parse_gate() {
        const Token &name = next();
        auto kind = op_kind_from_name(name.text);
        if (!kind.has_value() || *kind == OpKind::MEASURE || *kind == OpKind::BARRIER) {
            throw UnknownGateError(name.text);
        }
        const OpInfo &info = op_info(*kind);
        const Token &param_tok = peek();
        std::vector<double> params = parse_params();
        if (params.size() != info.num_params) {
            throw QasmSyntaxError(
                param_tok.line,
                param_tok.column,
                std::to_string(info.num_params) + " parameter(s) for '" + name.text + "'",
                "got " + std::to_string(params.size()));
        }
        const Token &args_tok = peek();
        std::vector<Arg> args = parse_qubit_args();
        expect_symbol(';');
        if (args.size() != info.num_qubits) {
            throw QasmSyntaxError(
                args_tok.line,
                args_tok.column,
                std::to_string(info.num_qubits) + " qubit argument(s) for '" + name.text + "'",
                "got " + std::to_string(args.size()));
        }
        std::size_t width = 1;
        bool broadcast = false;
        for (const auto &a : args) {
            if (a.whole_register) {
                if (broadcast && a.indices.size() != width) {
                    throw RegisterError("register width mismatch in '" + name.text + "'" + where(name));
                }
                broadcast = true;
                width = a.indices.size();
            }
        }
        for (std::size_t k = 0; k < width; k++) {
            Operation op;
            op.kind = *kind;
            op.params = params;
            for (const auto &a : args) {
                op.qubits.push_back(a.whole_register ? a.indices[k] : a.indices[0]);
            }
            for (std::size_t i = 0; i < op.qubits.size(); i++) {
                for (std::size_t j = 0; j < i; j++) {
                    if (op.qubits[i] == op.qubits[j]) {
                        throw RegisterError("'" + name.text + "' applied to the same qubit twice" + where(name));
                    }
                }
            }
            ops_.push_back(std::move(op));
        }
    }

    void parse_measure() {
        const Token &kw = next();
        Arg q = parse_arg(true);
        if (peek().kind != Tok::ARROW) {
            fail(peek(), "'->'");
        }
        next();
        Arg c = parse_arg(false);
        expect_symbol(';');
        if (q.whole_register != c.whole_register || q.indices.size() != c.indices.size()) {
            throw RegisterError("measure operands have mismatched widths" + where(kw));
        }
        for (std::size_t k = 0; k < q.indices.size(); k++) {
            Operation op;
            op.kind = OpKind::MEASURE;
            op.qubits = {q.indices[k]};
            op.clbit = c.indices[k];
            ops_.push_back(std::move(op));
        }
    }

    void parse_barrier() {
        next();
        std::vector<Arg> args = parse_qubit_args();
        expect_symbol(';');
        Operation op;
        op.kind = OpKind::BARRIER;
        std::set<uint32_t> seen;
        for (const auto &a : args) {
            for (uint32_t q : a.indices) {
                if (seen.insert(q).second) {
                    op.qubits.push_back(q);
                }
            }
        }
        ops_.push_back(std::move(op));
    }
};

}  // namespace

Circuit parse_qasm(std::string_view text) {
    return Parser(tokenize(text)).run();
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

std::string emit_qasm(const Circuit &c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    if (c.num_qubits > 0) {
        out << "qreg q[" << c.num_qubits << "];\n";
    }
    if (c.num_clbits > 0) {
        out << "creg c[" << c.num_clbits << "];\n";
    }
    for (const auto &op : c.ops) {
        if (op.kind == OpKind::MEASURE) {
            out << "measure q[" << op.qubits[0] << "] -> c[" << op.clbit << "];\n";
            continue;
        }
        out << op.name();
        if (!op.params.empty()) {
            out << "(";
            for (std::size_t k = 0; k < op.params.size(); k++) {
                out << (k ? "," : "") << format_double(op.params[k]);
            }
            out << ")";
        }
        out << " ";
        for (std::size_t k = 0; k < op.qubits.size(); k++) {
            out << (k ? "," : "") << "q[" << op.qubits[k] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace qfid
