#include "budgetsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "budgetsim/format.hpp"

namespace budgetsim::csv {

namespace {

double parse_field(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error("trajectory CSV: bad numeric field on line " +
                                 std::to_string(line_no));
    }
    return value;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

void put(std::ostream& os, const std::optional<double>& cell) {
    if (cell) os << format_double(*cell);
}

}  // namespace

void write_trajectory(std::ostream& os, const Trajectory& traj, const ModelParams& p) {
    os << "t,b,regime\n";
    for (const auto& s : traj.samples) {
        os << format_double(s.t) << ',' << format_double(s.b) << ','
           << to_string(classify_regime(s.b, p)) << '\n';
    }
}

std::vector<TimeSample> parse_trajectory(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "t,b,regime") {
        throw std::runtime_error("trajectory CSV: missing t,b,regime header");
    }
    std::vector<TimeSample> samples;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 3) {
            throw std::runtime_error("trajectory CSV: expected 3 fields on line " +
                                     std::to_string(line_no));
        }
        samples.push_back({parse_field(fields[0], line_no), parse_field(fields[1], line_no)});
    }
    return samples;
}

void write_portrait(std::ostream& os, const std::vector<PortraitSample>& samples) {
    os << "b,dbdt\n";
    for (const auto& s : samples) {
        os << format_double(s.b) << ',' << format_double(s.dbdt) << '\n';
    }
}

void write_fixed_points(std::ostream& os, const FixedPointReport& report) {
    os << "b_star,stability,debt_continuum\n";
    const char* flag = report.debt_continuum ? "true" : "false";
    if (report.points.empty()) {
        os << ',' << to_string(Stability::None) << ',' << flag << '\n';
        return;
    }
    for (const auto& point : report.points) {
        os << format_double(point.b_star) << ',' << to_string(point.stability) << ',' << flag
           << '\n';
    }
}

void write_sweep(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
    const bool with_t0 = std::find(spec.outputs.begin(), spec.outputs.end(),
                                   SweepOutput::TimeToZero) != spec.outputs.end();
    const bool with_final = std::find(spec.outputs.begin(), spec.outputs.end(),
                                      SweepOutput::FinalB) != spec.outputs.end();
    const bool with_err = std::find(spec.outputs.begin(), spec.outputs.end(),
                                    SweepOutput::MaxError) != spec.outputs.end();

    os << to_string(spec.varying) << ",gamma,b_star,stability,debt_continuum";
    if (with_t0) os << ",t0";
    if (with_final) os << ",final_b";
    if (with_err) os << ",max_error";
    os << ",error\n";

    for (const auto& row : result.rows) {
        os << format_double(row.value) << ',' << format_double(row.gamma) << ',';
        put(os, row.b_star);
        os << ',' << to_string(row.stability) << ',' << (row.debt_continuum ? "true" : "false");
        if (with_t0) {
            os << ',';
            put(os, row.t0);
        }
        if (with_final) {
            os << ',';
            put(os, row.final_b);
        }
        if (with_err) {
            os << ',';
            put(os, row.max_error);
        }
        os << ',' << row.error << '\n';
    }
}

void write_validation_grid(std::ostream& os, const Trajectory& traj,
                           const CompositeSolution& comp) {
    os << "t,b_numeric,b_analytic\n";
    for (const auto& s : traj.samples) {
        os << format_double(s.t) << ',' << format_double(s.b) << ','
           << format_double(comp.eval(s.t)) << '\n';
    }
}

}  // namespace budgetsim::csv
