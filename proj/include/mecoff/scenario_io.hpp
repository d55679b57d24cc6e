#pragma once

// Text serialization shared by the file formats: every floating-point
// value is written with 17 significant digits so emitted files are
// byte-stable and round-trip to the identical bits.
//
// Scenario line schema (whitespace separated, one scenario per line):
//   N  then per device: s_bits c_cycles theta_s f_l_hz h_sq alpha beta
//   then: W delta_sq F P_t[0..N) P_I[0..N) kappa

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mecoff/types.hpp"

namespace mecoff {

struct ParseError : std::runtime_error {
    ParseError(const std::string& where, int line, int field, const std::string& what)
        : std::runtime_error(where + ":" + std::to_string(line) + ": field " +
                             std::to_string(field) + ": " + what),
          line_number(line),
          field_index(field) {}
    int line_number;
    int field_index;
};

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Splits a line into whitespace-separated tokens and parses them one by
// one, reporting the 1-based field index on malformed input.
class TokenReader {
  public:
    TokenReader(const std::string& line, std::string where, int line_number)
        : where_(std::move(where)), line_number_(line_number) {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) tokens_.push_back(tok);
    }

    bool done() const { return pos_ >= tokens_.size(); }
    size_t remaining() const { return tokens_.size() - pos_; }

    double next_double() {
        const std::string& t = raw("number");
        char* end = nullptr;
        const double v = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size())
            throw ParseError(where_, line_number_, static_cast<int>(pos_), "expected number, got '" + t + "'");
        return v;
    }

    long long next_int() {
        const std::string& t = raw("integer");
        char* end = nullptr;
        const long long v = std::strtoll(t.c_str(), &end, 10);
        if (end != t.c_str() + t.size())
            throw ParseError(where_, line_number_, static_cast<int>(pos_), "expected integer, got '" + t + "'");
        return v;
    }

    std::string next_word() { return raw("word"); }

    void expect_end() const {
        if (!done())
            throw ParseError(where_, line_number_, static_cast<int>(pos_ + 1),
                             "unexpected trailing field '" + tokens_[pos_] + "'");
    }

  private:
    const std::string& raw(const char* kind) {
        if (done())
            throw ParseError(where_, line_number_, static_cast<int>(pos_ + 1),
                             std::string("missing ") + kind);
        return tokens_[pos_++];
    }

    std::vector<std::string> tokens_;
    size_t pos_ = 0;
    std::string where_;
    int line_number_;
};

inline void write_scenario_fields(std::string& out, const Scenario& sc) {
    const int n = sc.n();
    out += std::to_string(n);
    for (int i = 0; i < n; ++i) {
        const Device& d = sc.devices[i];
        out += ' ';
        out += fmt_double(d.task.data_bits);
        out += ' ';
        out += fmt_double(d.task.cpu_cycles);
        out += ' ';
        out += fmt_double(d.task.max_delay_s);
        out += ' ';
        out += fmt_double(d.local_cpu_hz);
        out += ' ';
        out += fmt_double(d.channel_gain_sq);
        out += ' ';
        out += fmt_double(d.weight_delay);
        out += ' ';
        out += fmt_double(d.weight_energy);
    }
    out += ' ';
    out += fmt_double(sc.radio.bandwidth_hz);
    out += ' ';
    out += fmt_double(sc.radio.noise_power_w);
    out += ' ';
    out += fmt_double(sc.mes_cpu_hz);
    for (int i = 0; i < n; ++i) {
        out += ' ';
        out += fmt_double(sc.radio.tx_power_w[i]);
    }
    for (int i = 0; i < n; ++i) {
        out += ' ';
        out += fmt_double(sc.radio.idle_power_w[i]);
    }
    out += ' ';
    out += fmt_double(sc.devices.empty() ? 1e-28 : sc.devices[0].energy_coeff);
}

inline Scenario read_scenario_fields(TokenReader& tr) {
    Scenario sc;
    const long long n = tr.next_int();
    if (n < 1 || n > 64) throw std::invalid_argument("scenario: device count out of range");
    sc.devices.resize(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) {
        Device& d = sc.devices[static_cast<size_t>(i)];
        d.id = static_cast<int>(i);
        d.task.data_bits = tr.next_double();
        d.task.cpu_cycles = tr.next_double();
        d.task.max_delay_s = tr.next_double();
        d.local_cpu_hz = tr.next_double();
        d.channel_gain_sq = tr.next_double();
        d.weight_delay = tr.next_double();
        d.weight_energy = tr.next_double();
    }
    sc.radio.bandwidth_hz = tr.next_double();
    sc.radio.noise_power_w = tr.next_double();
    sc.mes_cpu_hz = tr.next_double();
    sc.radio.tx_power_w.resize(static_cast<size_t>(n));
    sc.radio.idle_power_w.resize(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) sc.radio.tx_power_w[static_cast<size_t>(i)] = tr.next_double();
    for (long long i = 0; i < n; ++i) sc.radio.idle_power_w[static_cast<size_t>(i)] = tr.next_double();
    const double kappa = tr.next_double();
    for (Device& d : sc.devices) d.energy_coeff = kappa;
    return sc;
}

inline void write_scenarios(std::ostream& os, const std::vector<Scenario>& scenarios) {
    os << "# mecoff scenarios 1\n";
    os << "# N then per device (s_bits c_cycles theta_s f_l_hz h_sq alpha beta)"
          " then (W delta_sq F P_t... P_I... kappa)\n";
    std::string line;
    for (const Scenario& sc : scenarios) {
        line.clear();
        write_scenario_fields(line, sc);
        os << line << '\n';
    }
}

inline void write_scenarios_file(const std::string& path, const std::vector<Scenario>& scenarios) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_scenarios(os, scenarios);
}

inline std::vector<Scenario> read_scenarios(std::istream& is, const std::string& where = "<stream>") {
    std::vector<Scenario> out;
    std::string line;
    int line_number = 0;
    while (std::getline(is, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#') continue;
        TokenReader tr(line, where, line_number);
        Scenario sc = read_scenario_fields(tr);
        tr.expect_end();
        validate(sc);
        out.push_back(std::move(sc));
    }
    return out;
}

inline std::vector<Scenario> read_scenarios_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_scenarios(is, path);
}

}  // namespace mecoff
