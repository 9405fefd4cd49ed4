// Copyright 2026 The TDD Authors
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

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>

#include "tdd/circuit.h"
#include "tdd/error.h"

namespace tdd {

namespace {

enum class Tok { Ident, Number, String, Symbol, Arrow, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    int line = 0;
    int column = 0;
};

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) {
            return t;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.type = Tok::Ident;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                t.text += advance();
            }
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            t.type = Tok::Number;
            while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                t.text += advance();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                t.text += advance();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                    t.text += advance();
                }
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    t.text += advance();
                }
            }
        } else if (c == '"') {
            t.type = Tok::String;
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"') {
                t.text += advance();
            }
            if (pos_ >= src_.size()) {
                throw TddError(ErrorKind::Syntax, where(t) + "unterminated string");
            }
            advance();
        } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            t.type = Tok::Arrow;
            t.text = "->";
            advance();
            advance();
        } else {
            t.type = Tok::Symbol;
            t.text = std::string(1, advance());
        }
        return t;
    }

    static std::string where(const Token &t) {
        return "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": ";
    }

   private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            line_++;
            col_ = 1;
        } else {
            col_++;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Argument {
    std::string reg;
    std::optional<std::uint32_t> index;
    Token at;
};

class Parser {
   public:
    Parser(std::string_view text, std::string name) : lex_(text) {
        circuit_.name = std::move(name);
        tok_ = lex_.next();
    }

    Circuit run() {
        header();
        while (tok_.type != Tok::End) {
            statement();
        }
        if (!have_qreg_) {
            throw TddError(ErrorKind::Syntax, "no qreg declared");
        }
        circuit_.validate();
        return std::move(circuit_);
    }

   private:
    [[noreturn]] void fail(const Token &t, const std::string &msg) {
        throw TddError(ErrorKind::Syntax, Lexer::where(t) + msg);
    }

    Token take() {
        Token t = tok_;
        tok_ = lex_.next();
        return t;
    }

    bool at_symbol(const char *s) const {
        return tok_.type == Tok::Symbol && tok_.text == s;
    }

    void expect_symbol(const char *s) {
        if (!at_symbol(s)) {
            fail(tok_, std::string("expected '") + s + "'" + (tok_.type == Tok::End ? " before end of input" : ", found '" + tok_.text + "'"));
        }
        take();
    }

    std::string expect_ident() {
        if (tok_.type != Tok::Ident) {
            fail(tok_, "expected identifier");
        }
        return take().text;
    }

    std::uint32_t expect_uint() {
        if (tok_.type != Tok::Number || tok_.text.find_first_not_of("0123456789") != std::string::npos) {
            fail(tok_, "expected non-negative integer");
        }
        return static_cast<std::uint32_t>(std::stoul(take().text));
    }

    void warn_once(const std::string &what) {
        if (warned_.insert(what).second) {
            circuit_.warnings.push_back("ignored " + what + " statements");
        }
    }

    void header() {
        if (tok_.type == Tok::Ident && tok_.text == "OPENQASM") {
            take();
            if (tok_.type != Tok::Number) {
                fail(tok_, "expected version number");
            }
            Token v = take();
            if (v.text.rfind("2", 0) != 0) {
                throw TddError(ErrorKind::UnsupportedFeature, Lexer::where(v) + "only OpenQASM 2 is supported");
            }
            expect_symbol(";");
        } else {
            fail(tok_, "expected OPENQASM header");
        }
    }

    void skip_statement() {
        while (tok_.type != Tok::End && !at_symbol(";")) {
            take();
        }
        expect_symbol(";");
    }

    void statement() {
        if (tok_.type != Tok::Ident) {
            fail(tok_, "expected statement, found '" + tok_.text + "'");
        }
        const std::string kw = tok_.text;
        if (kw == "include") {
            take();
            if (tok_.type != Tok::String) {
                fail(tok_, "expected file name string");
            }
            take();
            expect_symbol(";");
        } else if (kw == "qreg") {
            Token at = take();
            if (have_qreg_) {
                throw TddError(ErrorKind::UnsupportedFeature, Lexer::where(at) + "multiple quantum registers");
            }
            qreg_ = expect_ident();
            expect_symbol("[");
            circuit_.n_qubits = expect_uint();
            expect_symbol("]");
            expect_symbol(";");
            have_qreg_ = true;
        } else if (kw == "creg" || kw == "measure" || kw == "barrier") {
            warn_once(kw);
            skip_statement();
        } else if (kw == "if") {
            warn_once("conditional");
            skip_statement();
        } else if (kw == "gate" || kw == "opaque" || kw == "reset") {
            throw TddError(ErrorKind::UnsupportedFeature, Lexer::where(tok_) + "'" + kw + "' is not supported");
        } else {
            gate_statement();
        }
    }

    double expr() {
        double v = term();
        while (at_symbol("+") || at_symbol("-")) {
            bool plus = take().text == "+";
            double r = term();
            v = plus ? v + r : v - r;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (at_symbol("*") || at_symbol("/")) {
            bool mul = take().text == "*";
            double r = unary();
            v = mul ? v * r : v / r;
        }
        return v;
    }

    double unary() {
        if (at_symbol("-")) {
            take();
            return -unary();
        }
        if (at_symbol("+")) {
            take();
            return unary();
        }
        if (at_symbol("(")) {
            take();
            double v = expr();
            expect_symbol(")");
            return v;
        }
        if (tok_.type == Tok::Number) {
            Token t = take();
            try {
                std::size_t used = 0;
                double v = std::stod(t.text, &used);
                if (used == t.text.size()) {
                    return v;
                }
            } catch (const std::exception &) {
            }
            fail(t, "malformed number '" + t.text + "'");
        }
        if (tok_.type == Tok::Ident && tok_.text == "pi") {
            take();
            return std::numbers::pi;
        }
        fail(tok_, "expected expression");
    }

    Argument argument() {
        Argument a;
        a.at = tok_;
        a.reg = expect_ident();
        if (a.reg != qreg_) {
            fail(a.at, "unknown register '" + a.reg + "'");
        }
        if (at_symbol("[")) {
            take();
            a.index = expect_uint();
            expect_symbol("]");
        }
        return a;
    }

    void gate_statement() {
        Token name = take();
        GateKind kind;
        if (!gate_kind_from_name(name.text, &kind)) {
            throw TddError(ErrorKind::UnsupportedFeature,
                           "unsupported gate '" + name.text + "' at line " + std::to_string(name.line));
        }
        if (!have_qreg_) {
            fail(name, "gate before qreg declaration");
        }
        std::vector<double> params;
        if (at_symbol("(")) {
            take();
            if (!at_symbol(")")) {
                params.push_back(expr());
                while (at_symbol(",")) {
                    take();
                    params.push_back(expr());
                }
            }
            expect_symbol(")");
        }
        if (params.size() != gate_param_count(kind)) {
            fail(name, "gate '" + name.text + "' takes " + std::to_string(gate_param_count(kind)) + " parameter(s)");
        }
        std::vector<Argument> args{argument()};
        while (at_symbol(",")) {
            take();
            args.push_back(argument());
        }
        expect_symbol(";");
        if (args.size() != gate_arity(kind)) {
            fail(name, "gate '" + name.text + "' takes " + std::to_string(gate_arity(kind)) + " qubit(s)");
        }
        for (const auto &a : args) {
            if (a.index && *a.index >= circuit_.n_qubits) {
                fail(a.at, "qubit index " + std::to_string(*a.index) + " out of range");
            }
        }
        bool broadcast = false;
        for (const auto &a : args) {
            broadcast |= !a.index.has_value();
        }
        std::uint32_t reps = broadcast ? circuit_.n_qubits : 1;
        for (std::uint32_t k = 0; k < reps; k++) {
            Gate g{kind, {}, params};
            for (const auto &a : args) {
                g.qubits.push_back(a.index ? *a.index : k);
            }
            if (std::set<std::uint32_t>(g.qubits.begin(), g.qubits.end()).size() != g.qubits.size()) {
                fail(name, "gate '" + name.text + "' applied to a repeated qubit");
            }
            circuit_.gates.push_back(std::move(g));
        }
    }

    Lexer lex_;
    Token tok_;
    Circuit circuit_;
    std::string qreg_;
    bool have_qreg_ = false;
    std::set<std::string> warned_;
};

}  // namespace

Circuit parse_qasm(std::string_view text, std::string name) {
    return Parser(text, std::move(name)).run();
}

}  // namespace tdd
