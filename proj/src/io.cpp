// SPDX-License-Identifier: Apache-2.0
//
// qcs-radar: quantized compressive sensing for FMCW range estimation
// Copyright (C) 2026 The qcs-radar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "qcs/io.hpp"

#include "qcs/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace qcs
{
namespace
{

namespace fs = std::filesystem;

// Field access on a JSON object that records which keys were consumed, so
// unknown keys can be reported, and prefixes errors with the field path.
class Fields
{
public:
    Fields(const Json &obj, std::string where) : obj_(obj), where_(std::move(where))
    {
        require(obj_.is_object(), ErrorKind::schema, where_ + ": expected a JSON object");
    }

    const Json *find(const std::string &key)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const Json &at(const std::string &key)
    {
        const Json *j = find(key);
        require(j != nullptr, ErrorKind::schema, path(key) + ": missing required field");
        return *j;
    }

    std::string path(const std::string &key) const { return where_ + "." + key; }

    void reject_unknown() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            require(seen_.count(it.key()) != 0, ErrorKind::schema, path(it.key()) + ": unknown field");
    }

private:
    const Json &obj_;
    std::string where_;
    std::set<std::string> seen_;
};

std::uint64_t as_uint(const Json &j, const std::string &where)
{
    require(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0), ErrorKind::schema,
            where + ": expected a non-negative integer, got " + j.dump());
    return j.get<std::uint64_t>();
}

std::uint64_t as_positive(const Json &j, const std::string &where)
{
    const std::uint64_t v = as_uint(j, where);
    require(v > 0, ErrorKind::schema, where + ": expected a positive integer, got 0");
    return v;
}

double as_double(const Json &j, const std::string &where)
{
    require(j.is_number(), ErrorKind::schema, where + ": expected a number, got " + j.dump());
    return j.get<double>();
}

bool as_bool(const Json &j, const std::string &where)
{
    require(j.is_boolean(), ErrorKind::schema, where + ": expected true or false, got " + j.dump());
    return j.get<bool>();
}

std::string as_string(const Json &j, const std::string &where)
{
    require(j.is_string(), ErrorKind::schema, where + ": expected a string, got " + j.dump());
    return j.get<std::string>();
}

// Re-tags argument errors raised by value parsers as schema errors at a field.
template <typename F>
auto at_field(const std::string &where, F &&parse)
{
    try
    {
        return parse();
    }
    catch (const Error &e)
    {
        if (e.kind() == ErrorKind::schema)
            throw;
        fail(ErrorKind::schema, where + ": " + e.what());
    }
}

BitDepth bit_depth_from_json(const Json &j, const std::string &where)
{
    if (j.is_string())
        return at_field(where, [&] { return parse_bit_depth(j.get<std::string>()); });
    return at_field(where, [&] { return BitDepth::bits(static_cast<unsigned>(std::min<std::uint64_t>(as_uint(j, where), 1000))); });
}

Json bit_depth_to_json(BitDepth depth)
{
    return depth.quantized() ? Json(depth.value()) : Json("unquantized");
}

// Accepts either a single value or a non-empty array of values.
template <typename T, typename F>
std::vector<T> list_of(const Json &j, const std::string &where, F &&item, bool allow_scalar)
{
    std::vector<T> out;
    if (!j.is_array())
    {
        require(allow_scalar, ErrorKind::schema, where + ": expected an array, got " + j.dump());
        out.push_back(item(j, where));
        return out;
    }
    require(!j.empty(), ErrorKind::schema, where + ": must not be empty");
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(item(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::string format_double(const char *fmt, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::uint32_t to_little_endian(std::uint32_t v)
{
    if constexpr (std::endian::native == std::endian::big)
        return ((v & 0xffU) << 24) | ((v & 0xff00U) << 8) | ((v >> 8) & 0xff00U) | (v >> 24);
    return v;
}

Json radar_to_json(const RadarParams &p)
{
    return Json{{"f0", p.carrier_hz},
                {"bandwidth", p.bandwidth_hz},
                {"ramp_duration", p.ramp_duration_s},
                {"n_bins", p.n_bins}};
}

RadarParams radar_from_json(const Json &j, const std::string &where)
{
    Fields f(j, where);
    RadarParams p;
    p.carrier_hz = as_double(f.at("f0"), f.path("f0"));
    p.bandwidth_hz = as_double(f.at("bandwidth"), f.path("bandwidth"));
    p.ramp_duration_s = as_double(f.at("ramp_duration"), f.path("ramp_duration"));
    p.n_bins = as_positive(f.at("n_bins"), f.path("n_bins"));
    f.reject_unknown();
    at_field(where, [&] {
        p.validate();
        return 0;
    });
    return p;
}

} // namespace

// ---- plans and dithers --------------------------------------------------------

Json to_json(const SamplingPlan &plan)
{
    return Json{{"n_bins", plan.n_bins}, {"n_meas", plan.n_meas()}, {"seed", plan.seed}, {"omega", plan.omega}};
}

SamplingPlan plan_from_json(const Json &j)
{
    Fields f(j, "plan");
    SamplingPlan plan;
    plan.n_bins = as_positive(f.at("n_bins"), f.path("n_bins"));
    const std::uint64_t m = as_positive(f.at("n_meas"), f.path("n_meas"));
    plan.seed = as_uint(f.at("seed"), f.path("seed"));
    plan.omega = list_of<std::size_t>(
        f.at("omega"), f.path("omega"), [](const Json &v, const std::string &w) { return as_uint(v, w); }, false);
    f.reject_unknown();
    require(plan.omega.size() == m, ErrorKind::schema,
            "plan.omega: has " + std::to_string(plan.omega.size()) + " entries but n_meas is " + std::to_string(m));
    at_field("plan", [&] {
        plan.validate();
        return 0;
    });
    return plan;
}

Json to_json(const Dither &dither, bool by_seed)
{
    if (by_seed && dither.seed)
        return Json{{"seed", *dither.seed}, {"delta", dither.step}};
    Json values = Json::array();
    for (const Complex &v : dither.values)
        values.push_back(Json::array({v.real(), v.imag()}));
    return Json{{"values", std::move(values)}};
}

Dither dither_from_json(const Json &j, const QuantizerConfig &cfg, std::size_t n_meas)
{
    Fields f(j, "dither");
    require(cfg.quantized(), ErrorKind::schema, "dither: present but the capture is unquantized");
    const double delta = cfg.step();
    if (const Json *d = f.find("delta"))
    {
        const double stored = as_double(*d, f.path("delta"));
        require(std::abs(stored - delta) <= 1e-12 * delta, ErrorKind::schema,
                "dither.delta: " + format_double("%.17g", stored) + " does not match the quantizer step " +
                    format_double("%.17g", delta));
    }

    Dither out;
    out.step = delta;
    if (const Json *seed = f.find("seed"))
    {
        out = draw_dither(cfg, n_meas, as_uint(*seed, f.path("seed")));
    }
    else
    {
        const Json &values = f.at("values");
        require(values.is_array(), ErrorKind::schema, "dither.values: expected an array");
        require(values.size() == n_meas, ErrorKind::length_mismatch,
                "dither.values: has " + std::to_string(values.size()) + " entries, expected " + std::to_string(n_meas));
        out.values.reserve(n_meas);
        for (std::size_t k = 0; k < values.size(); ++k)
        {
            const std::string where = "dither.values[" + std::to_string(k) + "]";
            require(values[k].is_array() && values[k].size() == 2, ErrorKind::schema, where + ": expected [re, im]");
            const double re = as_double(values[k][0], where);
            const double im = as_double(values[k][1], where);
            require(std::abs(re) < 0.5 * delta && std::abs(im) < 0.5 * delta, ErrorKind::schema,
                    where + ": outside (-delta/2, delta/2)");
            out.values.emplace_back(re, im);
        }
    }
    f.reject_unknown();
    return out;
}

// ---- experiment configuration ---------------------------------------------------

Json to_json(const ExperimentConfig &cfg)
{
    Json depths = Json::array();
    for (BitDepth d : cfg.bit_depths)
        depths.push_back(bit_depth_to_json(d));
    Json algorithms = Json::array();
    for (Algorithm a : cfg.algorithms)
        algorithms.push_back(to_string(a));
    Json dithered = Json::array();
    for (bool d : cfg.dithered)
        dithered.push_back(d);

    return Json{
        {"n_bins", cfg.n_bins},
        {"sparsities", cfg.sparsities},
        {"bit_depths", std::move(depths)},
        {"bitrates", cfg.bitrates},
        {"dithered", std::move(dithered)},
        {"algorithms", std::move(algorithms)},
        {"trials", cfg.trials},
        {"master_seed", cfg.master_seed},
        {"mu", cfg.mu},
        {"consistency_target", cfg.consistency_target},
        {"min_iters", cfg.min_iters},
        {"max_iters", cfg.max_iters ? Json(*cfg.max_iters) : Json(nullptr)},
        {"min_meas", cfg.min_meas},
        {"max_meas", cfg.max_meas},
        {"range_norm", to_string(cfg.range_norm)},
    };
}

ExperimentConfig config_from_json(const Json &j)
{
    Fields f(j, "config");
    ExperimentConfig cfg;
    auto uint_item = [](const Json &v, const std::string &w) { return as_positive(v, w); };

    if (const Json *v = f.find("n_bins"))
        cfg.n_bins = as_positive(*v, f.path("n_bins"));
    if (const Json *v = f.find("sparsities"))
        cfg.sparsities = list_of<std::size_t>(*v, f.path("sparsities"), uint_item, false);
    if (const Json *v = f.find("bit_depths"))
        cfg.bit_depths = list_of<BitDepth>(*v, f.path("bit_depths"), bit_depth_from_json, false);
    if (const Json *v = f.find("bitrates"))
        cfg.bitrates = list_of<std::uint64_t>(*v, f.path("bitrates"), uint_item, false);
    if (const Json *v = f.find("dithered"))
        cfg.dithered = list_of<bool>(*v, f.path("dithered"), as_bool, true);

    const Json *algos = f.find("algorithms");
    const Json *algo = f.find("algorithm");
    require(!(algos && algo), ErrorKind::schema, "config: give either \"algorithm\" or \"algorithms\", not both");
    if (algos || algo)
    {
        const std::string where = f.path(algos ? "algorithms" : "algorithm");
        cfg.algorithms = list_of<Algorithm>(
            algos ? *algos : *algo, where,
            [](const Json &v, const std::string &w) { return at_field(w, [&] { return parse_algorithm(as_string(v, w)); }); },
            true);
    }

    if (const Json *v = f.find("trials"))
        cfg.trials = as_positive(*v, f.path("trials"));
    if (const Json *v = f.find("master_seed"))
        cfg.master_seed = as_uint(*v, f.path("master_seed"));
    if (const Json *v = f.find("mu"))
        cfg.mu = as_double(*v, f.path("mu"));
    if (const Json *v = f.find("consistency_target"))
        cfg.consistency_target = as_double(*v, f.path("consistency_target"));
    if (const Json *v = f.find("min_iters"))
        cfg.min_iters = as_uint(*v, f.path("min_iters"));
    if (const Json *v = f.find("max_iters"); v && !v->is_null())
        cfg.max_iters = as_positive(*v, f.path("max_iters"));
    if (const Json *v = f.find("min_meas"))
        cfg.min_meas = as_positive(*v, f.path("min_meas"));
    if (const Json *v = f.find("max_meas"))
        cfg.max_meas = as_positive(*v, f.path("max_meas"));
    if (const Json *v = f.find("range_norm"))
        cfg.range_norm = at_field(f.path("range_norm"), [&] { return parse_range_norm(as_string(*v, f.path("range_norm"))); });
    f.reject_unknown();

    at_field("config", [&] {
        cfg.validate();
        return 0;
    });

    // A bit depth must contribute at least one grid point.
    for (BitDepth depth : cfg.bit_depths)
    {
        const std::uint64_t bits = depth.accounting_bits();
        std::string first_problem;
        bool usable = false;
        for (std::uint64_t b : cfg.bitrates)
        {
            if (b % bits != 0)
            {
                if (first_problem.empty())
                    first_problem = std::to_string(b) + "/" + std::to_string(bits) + " is not an integer";
                continue;
            }
            const std::uint64_t m = b / bits;
            if (m < cfg.min_meas || m > cfg.max_meas)
            {
                if (first_problem.empty())
                    first_problem = "M=" + std::to_string(m) + " outside [" + std::to_string(cfg.min_meas) + ", " +
                                    std::to_string(cfg.max_meas) + "]";
                continue;
            }
            usable = true;
        }
        require(usable, ErrorKind::schema,
                "config.bitrates: no usable bit-rate for b=" + to_string(depth) + " (" + first_problem + ")");
    }
    return cfg;
}

ExperimentConfig parse_config(const fs::path &path)
{
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::io, path.string() + ": cannot open config file");
    Json j;
    try
    {
        j = Json::parse(in);
    }
    catch (const Json::parse_error &e)
    {
        fail(ErrorKind::schema, path.string() + ": invalid JSON: " + e.what());
    }
    return config_from_json(j);
}

// ---- results ----------------------------------------------------------------------

std::string results_csv(std::span<const AggregateResult> results)
{
    std::vector<const AggregateResult *> rows;
    rows.reserve(results.size());
    for (const auto &r : results)
        rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const AggregateResult *a, const AggregateResult *b) {
        return a->point.order_key() < b->point.order_key();
    });

    std::ostringstream os;
    os << kResultsHeader << '\n';
    for (const AggregateResult *r : rows)
    {
        const GridPoint &p = r->point;
        os << p.sparsity << ',' << to_string(p.bit_depth) << ',' << format_double("%.10g", p.log2_bitrate()) << ','
           << p.n_meas << ',' << (p.dithered ? "true" : "false") << ',' << to_string(p.algorithm) << ',' << r->trials
           << ',' << format_double("%.6f", r->mean_tpr_pct) << ',' << format_double("%.6f", r->stderr_pct) << ','
           << format_double("%.9g", r->mean_l2_error) << '\n';
    }
    return os.str();
}

void write_results(std::span<const AggregateResult> results, const fs::path &path)
{
    require(!results.empty(), ErrorKind::invalid_argument, "write_results: no results to write");
    const std::string csv = results_csv(results);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::io, path.string() + ": cannot open for writing");
    out << csv;
    out.flush();
    require(static_cast<bool>(out), ErrorKind::io, path.string() + ": write failed");
}

// ---- captures ---------------------------------------------------------------------

fs::path payload_path_for(const fs::path &sidecar)
{
    fs::path p = sidecar;
    p.replace_extension(".iq");
    return p;
}

void write_capture(const Capture &capture, const fs::path &sidecar)
{
    capture.plan.validate();
    require(capture.samples.size() == capture.plan.n_meas(), ErrorKind::length_mismatch,
            "write_capture: " + std::to_string(capture.samples.size()) + " samples for a plan of " +
                std::to_string(capture.plan.n_meas()) + " measurements");

    Json j;
    j["schema_version"] = kCaptureSchemaVersion;
    j["n_bins"] = capture.plan.n_bins;
    j["n_meas"] = capture.plan.n_meas();
    // With an explicit omega the seed is provenance only.
    j["plan_seed"] = capture.plan.seed;
    if (!capture.plan_by_seed)
        j["omega"] = capture.plan.omega;
    j["bit_depth"] = bit_depth_to_json(capture.quantizer.bit_depth);
    j["dynamic_range"] = capture.quantizer.dynamic_range;
    switch (capture.dither_storage)
    {
    case DitherStorage::none:
        j["dither"] = nullptr;
        break;
    case DitherStorage::seed:
    case DitherStorage::values:
        require(capture.dither.has_value(), ErrorKind::invalid_argument, "write_capture: dither storage without dither");
        j["dither"] = to_json(*capture.dither, capture.dither_storage == DitherStorage::seed);
        break;
    case DitherStorage::unrecorded:
        j["dither"] = Json{{"delta", capture.quantizer.step()}};
        break;
    }
    if (capture.radar)
        j["radar"] = radar_to_json(*capture.radar);
    if (capture.truth_bins)
        j["truth"] = Json{{"bins", *capture.truth_bins}};
    const fs::path payload = payload_path_for(sidecar);
    j["payload"] = payload.filename().string();
    j["payload_format"] = "f32le-iq";

    {
        std::ofstream out(sidecar, std::ios::trunc);
        require(static_cast<bool>(out), ErrorKind::io, sidecar.string() + ": cannot open for writing");
        out << j.dump(2) << '\n';
        require(static_cast<bool>(out), ErrorKind::io, sidecar.string() + ": write failed");
    }

    std::vector<std::uint32_t> words;
    words.reserve(2 * capture.samples.size());
    for (const Complex &s : capture.samples)
    {
        words.push_back(to_little_endian(std::bit_cast<std::uint32_t>(static_cast<float>(s.real()))));
        words.push_back(to_little_endian(std::bit_cast<std::uint32_t>(static_cast<float>(s.imag()))));
    }
    std::ofstream out(payload, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::io, payload.string() + ": cannot open for writing");
    out.write(reinterpret_cast<const char *>(words.data()), static_cast<std::streamsize>(words.size() * sizeof(std::uint32_t)));
    require(static_cast<bool>(out), ErrorKind::io, payload.string() + ": write failed");
}

Capture read_capture(const fs::path &sidecar, std::vector<std::string> *warnings)
{
    std::ifstream in(sidecar);
    require(static_cast<bool>(in), ErrorKind::io, sidecar.string() + ": cannot open capture sidecar");
    Json j;
    try
    {
        j = Json::parse(in);
    }
    catch (const Json::parse_error &e)
    {
        fail(ErrorKind::schema, sidecar.string() + ": invalid JSON: " + e.what());
    }

    Fields f(j, "capture");
    const Json &version = f.at("schema_version");
    require(version.is_number_integer() && version.get<int>() == kCaptureSchemaVersion, ErrorKind::unsupported_version,
            "capture.schema_version: unsupported version " + version.dump() + " (expected " +
                std::to_string(kCaptureSchemaVersion) + ")");

    Capture cap;
    const std::size_t n_bins = as_positive(f.at("n_bins"), f.path("n_bins"));
    const std::size_t n_meas = as_positive(f.at("n_meas"), f.path("n_meas"));
    const Json *omega = f.find("omega");
    const Json *plan_seed = f.find("plan_seed");
    require(omega != nullptr || plan_seed != nullptr, ErrorKind::schema,
            "capture: one of \"omega\" and \"plan_seed\" is required");
    if (!omega)
    {
        cap.plan = make_sampling_plan(n_bins, n_meas, as_uint(*plan_seed, f.path("plan_seed")));
        cap.plan_by_seed = true;
    }
    else
    {
        cap.plan.n_bins = n_bins;
        if (plan_seed)
            cap.plan.seed = as_uint(*plan_seed, f.path("plan_seed"));
        cap.plan.omega = list_of<std::size_t>(
            *omega, f.path("omega"), [](const Json &v, const std::string &w) { return as_uint(v, w); }, false);
        require(cap.plan.omega.size() == n_meas, ErrorKind::length_mismatch,
                "capture.omega: has " + std::to_string(cap.plan.omega.size()) + " entries, n_meas is " +
                    std::to_string(n_meas));
        at_field("capture.omega", [&] {
            cap.plan.validate();
            return 0;
        });
    }

    const BitDepth depth = bit_depth_from_json(f.at("bit_depth"), f.path("bit_depth"));
    const double range = as_double(f.at("dynamic_range"), f.path("dynamic_range"));
    cap.quantizer = at_field(f.path("dynamic_range"), [&] { return QuantizerConfig::make(depth, range); });

    const Json &dither = f.at("dither");
    if (dither.is_null())
    {
        cap.dither_storage = DitherStorage::none;
    }
    else
    {
        require(dither.is_object(), ErrorKind::schema, "capture.dither: expected null or an object");
        if (dither.contains("seed"))
            cap.dither_storage = DitherStorage::seed;
        else if (dither.contains("values"))
            cap.dither_storage = DitherStorage::values;
        else
            cap.dither_storage = DitherStorage::unrecorded;
        if (cap.dither_storage == DitherStorage::unrecorded)
        {
            Fields df(dither, "capture.dither");
            df.at("delta");
            df.reject_unknown();
            require(cap.quantizer.quantized(), ErrorKind::schema, "capture.dither: present but the capture is unquantized");
        }
        else
        {
            cap.dither = dither_from_json(dither, cap.quantizer, n_meas);
        }
    }

    if (const Json *radar = f.find("radar"))
        cap.radar = radar_from_json(*radar, f.path("radar"));
    if (const Json *truth = f.find("truth"))
    {
        Fields tf(*truth, f.path("truth"));
        cap.truth_bins = list_of<std::size_t>(
            tf.at("bins"), tf.path("bins"), [](const Json &v, const std::string &w) { return as_positive(v, w); }, false);
        tf.reject_unknown();
    }

    const std::string payload_name = as_string(f.at("payload"), f.path("payload"));
    const std::string format = as_string(f.at("payload_format"), f.path("payload_format"));
    require(format == "f32le-iq", ErrorKind::unsupported_version,
            "capture.payload_format: unsupported format \"" + format + "\"");
    f.reject_unknown();

    const fs::path payload = sidecar.parent_path() / payload_name;
    std::ifstream pin(payload, std::ios::binary);
    require(static_cast<bool>(pin), ErrorKind::io, payload.string() + ": cannot open capture payload");
    std::vector<char> bytes((std::istreambuf_iterator<char>(pin)), std::istreambuf_iterator<char>());
    const std::size_t expected = 2 * n_meas * sizeof(float);
    require(bytes.size() == expected, ErrorKind::length_mismatch,
            payload.string() + ": payload has " + std::to_string(bytes.size()) + " bytes, expected " +
                std::to_string(expected) + " (2 x " + std::to_string(n_meas) + " float32)");

    auto sample = [&](std::size_t i) {
        std::uint32_t w;
        std::memcpy(&w, bytes.data() + i * sizeof(w), sizeof(w));
        return static_cast<double>(std::bit_cast<float>(to_little_endian(w)));
    };

    cap.samples.resize(n_meas);
    const double delta = cap.quantizer.step();
    std::size_t off_grid = 0;
    auto snap = [&](double v) {
        if (!cap.quantizer.quantized())
            return v;
        const double level = std::round((v - 0.5 * delta) / delta);
        const double snapped = delta * level + 0.5 * delta;
        if (std::abs(v - snapped) > 1e-6 * std::max(delta, std::abs(snapped)))
        {
            ++off_grid;
            return v;
        }
        return snapped;
    };
    for (std::size_t k = 0; k < n_meas; ++k)
        cap.samples[k] = {snap(sample(2 * k)), snap(sample(2 * k + 1))};

    if (off_grid > 0 && warnings)
        warnings->push_back(payload.string() + ": " + std::to_string(off_grid) +
                            " quantized sample components are off the delta-grid; kept as read");
    return cap;
}

} // namespace qcs
