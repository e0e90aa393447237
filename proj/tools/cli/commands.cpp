/*
 * Copyright (C) 2026 regio-forecast contributors
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
#include "cli/commands.hpp"

#include <regio/artifact.hpp>
#include <regio/csv.hpp>
#include <regio/error.hpp>
#include <regio/evaluation.hpp>
#include <regio/features.hpp>
#include <regio/mtl.hpp>
#include <regio/ppe.hpp>
#include <regio/rotation.hpp>
#include <regio/synth.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

namespace regio::cli {

namespace fs = std::filesystem;

namespace {

std::shared_ptr<spdlog::logger> logger()
{
    static auto log = [] {
        auto l = spdlog::stderr_color_mt("regio");
        l->set_pattern("%^[%l]%$ %v");
        l->set_level(spdlog::level::info);
        if (const char* env = std::getenv("REGIO_FORECAST_LOG"); env != nullptr && *env != '\0') {
            l->set_level(spdlog::level::from_str(env));
        }
        return l;
    }();
    return log;
}

void write_json(const fs::path& path, const nlohmann::json& j)
{
    csv::write_file_atomic(path, j.dump(2) + "\n");
}

const RegionalDataset& find_region(const std::vector<RegionalDataset>& datasets, RegionId region,
                                   const fs::path& dir)
{
    auto it = std::find_if(datasets.begin(), datasets.end(),
                           [&](const RegionalDataset& ds) { return ds.region == region; });
    if (it == datasets.end()) {
        throw Error(ErrorCode::Io, "missing case-study file " + region_file(dir, region).string());
    }
    return *it;
}

std::vector<RegionalDataset> load_for_case_study(const RunConfig& cfg, RegionId case_study)
{
    auto datasets = load_datasets(cfg.data_dir);
    find_region(datasets, case_study, cfg.data_dir);
    if (datasets.size() < 2) {
        throw Error(ErrorCode::TooFewRegions,
                    fmt::format("{} holds {} regional file(s); need at least two",
                                cfg.data_dir.string(), datasets.size()));
    }
    return datasets;
}

void write_metric_tables(const RunConfig& cfg, const std::vector<MetricReport>& reports)
{
    for (std::size_t t = 0; t < kTargetCount; ++t) {
        const auto path = cfg.out / (std::string(kTargetNames[t]) + ".csv");
        csv::write_file_atomic(path, metric_table_csv(reports, static_cast<Target>(t)));
    }
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        j.push_back(metric_report_to_json(r));
    }
    write_json(cfg.out / "metrics.json", j);
    logger()->info("wrote {} metric tables to {}", kTargetCount, cfg.out.string());
}

std::vector<DataRow> load_input(const RunConfig& cfg, const MtlModel& model)
{
    if (cfg.input.empty()) {
        throw Error(ErrorCode::BadConfig, "--input is required");
    }
    return parse_regional_csv(cfg.input, model.case_study).rows;
}

MtlModel load_model_arg(const RunConfig& cfg)
{
    if (cfg.model.empty()) {
        throw Error(ErrorCode::BadConfig, "--model is required");
    }
    return load_model(cfg.model);
}

// date,capacity,personnel rows matched to the input dates.
PpeSchedule load_schedule(const RunConfig& cfg, std::span<const DataRow> rows)
{
    PpeSchedule s = to_ppe_schedule(cfg);
    if (cfg.schedule.empty()) {
        return s;
    }
    const auto text = csv::read_file(cfg.schedule);
    std::map<std::string, std::pair<double, std::int64_t>> by_date;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        for (auto cell : csv::split_line(line)) {
            cells.emplace_back(cell);
        }
        if (line_no++ == 0) {
            if (cells != std::vector<std::string>{"date", "operating_capacity", "personnel"}) {
                throw Error(ErrorCode::MissingColumn,
                            "schedule header must be date,operating_capacity,personnel");
            }
            continue;
        }
        if (cells.size() != 3) {
            throw Error(ErrorCode::BadValue, "schedule row needs three cells", line_no - 1);
        }
        try {
            by_date[cells[0]] = {std::stod(cells[1]), std::stoll(cells[2])};
        } catch (const std::exception&) {
            throw Error(ErrorCode::BadValue, "unreadable schedule value", line_no - 1);
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto it = by_date.find(format_date(rows[i].date));
        if (it == by_date.end()) {
            throw Error(ErrorCode::BadValue, "schedule has no entry for " + format_date(rows[i].date));
        }
        s.capacity.push_back(it->second.first);
        s.personnel.push_back(it->second.second);
    }
    return s;
}

} // namespace

fs::path region_file(const fs::path& dir, RegionId region)
{
    return dir / (region.slug() + ".csv");
}

std::vector<RegionalDataset> load_datasets(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw Error(ErrorCode::Io, "data directory " + dir.string() + " does not exist");
    }
    std::vector<RegionalDataset> out;
    for (int code = 0; code < 10; ++code) {
        const auto region = RegionId::from_code(code);
        const auto path = region_file(dir, region);
        if (fs::exists(path, ec)) {
            out.push_back(parse_regional_csv(path, region));
            logger()->debug("loaded {} ({} rows)", path.string(), out.back().size());
        }
    }
    return out;
}

void cmd_synth(const RunConfig& cfg)
{
    const auto datasets = generate_synthetic(to_synthetic_spec(cfg));
    for (const auto& ds : datasets) {
        write_regional_csv(ds, region_file(cfg.out, ds.region));
    }
    logger()->info("wrote {} synthetic regions of {} rows to {}", datasets.size(), cfg.rows,
                   cfg.out.string());
}

void cmd_train(const RunConfig& cfg)
{
    const auto case_study = RegionId::from_name(cfg.case_study);
    const auto datasets = load_for_case_study(cfg, case_study);
    const auto rot = to_rotation_config(cfg);
    const auto& own = find_region(datasets, case_study, cfg.data_dir);
    const auto plan = plan_case_study(own, rot);
    const auto pool = pool_regions(datasets, case_study);
    const auto trained = train_mtl(pool, select_rows(own.rows, plan.train_used), case_study, rot.mtl);

    save_model(trained.model, cfg.out / "model.json");
    auto report = train_report_to_json(trained.report);
    if (!cfg.timing) {
        report.erase("generic_seconds");
        report.erase("dedicated_seconds");
    }
    auto& held_out = report["held_out_dates"] = nlohmann::json::array();
    for (auto i : plan.split.test_indices) {
        held_out.push_back(format_date(own.rows[i].date));
    }
    write_json(cfg.out / "train_report.json", report);
    logger()->info("trained {} on {} pooled + {} own rows; pool regions: {}", case_study.name(),
                   trained.report.generic_instances, trained.report.case_instances,
                   trained.report.pool_regions.size());
}

void cmd_evaluate(const RunConfig& cfg)
{
    const auto case_study = RegionId::from_name(cfg.case_study);
    const auto datasets = load_for_case_study(cfg, case_study);
    const auto run = evaluate_case_study(datasets, case_study, to_rotation_config(cfg));
    write_metric_tables(cfg, {run.report});
}

void cmd_rotate(const RunConfig& cfg)
{
    const auto datasets = load_datasets(cfg.data_dir);
    const auto reports = rotate_regions(datasets, to_rotation_config(cfg));
    write_metric_tables(cfg, reports);
}

void cmd_predict(const RunConfig& cfg)
{
    const auto model = load_model_arg(cfg);
    const auto rows = load_input(cfg, model);
    const auto pred = predict_monitoring(model, rows);

    std::string out = "date";
    for (auto name : kTargetNames) {
        out += fmt::format(",{}", name);
    }
    for (auto name : kTargetNames) {
        out += fmt::format(",{}_rounded", name);
    }
    out += '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += format_date(rows[i].date);
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            out += ',' + csv::format_fixed(pred.counts(i, t), 6);
        }
        for (std::size_t t = 0; t < kTargetCount; ++t) {
            out += fmt::format(",{}", pred.rounded[i][t]);
        }
        out += '\n';
    }
    csv::write_file_atomic(cfg.out / "predictions.csv", out);
    logger()->info("wrote {} predictions to {}", rows.size(), (cfg.out / "predictions.csv").string());
}

void cmd_ppe(const RunConfig& cfg)
{
    const auto model = load_model_arg(cfg);
    const auto rows = load_input(cfg, model);
    const auto days = forecast_series(model, rows, load_schedule(cfg, rows));
    csv::write_file_atomic(cfg.out / "ppe.csv", ppe_csv(days));
    logger()->info("wrote {} days of kit demand to {}", days.size(), (cfg.out / "ppe.csv").string());
}

void cmd_relevance(const RunConfig& cfg)
{
    const auto datasets = load_datasets(cfg.data_dir);
    std::vector<DataRow> rows;
    for (const auto& ds : datasets) {
        rows.insert(rows.end(), ds.rows.begin(), ds.rows.end());
    }
    if (rows.empty()) {
        throw Error(ErrorCode::EmptyPool, "no regional files in " + cfg.data_dir.string());
    }
    const auto report = score_relevance(expanded_features(rows), target_matrix(rows));
    csv::write_file_atomic(cfg.out / "relevance.csv", relevance_csv(report));
    logger()->info("scored {} features over {} rows", report.codes.size(), rows.size());
}

namespace {

// Flag values; unset flags leave the file/default value alone.
struct Overrides {
    std::optional<std::string> config, data_dir, case_study, out, model, input, schedule, selection;
    std::optional<std::size_t> k, test_days, bootstrap, top_n, max_train_days, regions, rows;
    std::optional<double> generic_weight, capacity, noise;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> personnel;
    bool timing = false;

    RunConfig resolve() const
    {
        RunConfig cfg = config ? load_config_file(*config) : RunConfig{};
        auto set = [](auto& field, const auto& opt) {
            if (opt) {
                field = *opt;
            }
        };
        set(cfg.data_dir, data_dir);
        set(cfg.case_study, case_study);
        set(cfg.out, out);
        set(cfg.model, model);
        set(cfg.input, input);
        set(cfg.schedule, schedule);
        set(cfg.selection, selection);
        set(cfg.k, k);
        set(cfg.test_days, test_days);
        set(cfg.bootstrap, bootstrap);
        set(cfg.top_n, top_n);
        set(cfg.max_train_days, max_train_days);
        set(cfg.regions, regions);
        set(cfg.rows, rows);
        set(cfg.generic_weight, generic_weight);
        set(cfg.operating_capacity, capacity);
        set(cfg.noise, noise);
        set(cfg.seed, seed);
        set(cfg.personnel, personnel);
        if (timing) {
            cfg.timing = true;
        }
        return cfg;
    }
};

void add_common(CLI::App& sub, Overrides& o)
{
    sub.add_option("--config", o.config, "JSON config file (flags override it)");
    sub.add_option("--out", o.out, "Output directory");
    sub.add_option("--seed", o.seed, "Master seed");
}

void add_training(CLI::App& sub, Overrides& o)
{
    sub.add_option("--data-dir", o.data_dir, "Directory of <region>.csv files");
    sub.add_option("--case-study", o.case_study, "Case-study region, e.g. ontario");
    sub.add_option("--k", o.k, "Neighbours per prediction (default 6)");
    sub.add_option("--generic-weight", o.generic_weight, "Weight of pooled instances (default 1.0)");
    sub.add_option("--test-days", o.test_days, "Held-out case-study days (default 54)");
    sub.add_option("--selection", o.selection, "fixed | ranked");
    sub.add_option("--top-n", o.top_n, "Features kept by ranked selection");
    sub.add_option("--max-train-days", o.max_train_days, "Cap on case-study training days");
    sub.add_flag("--timing", o.timing, "Record wall-clock training time in reports");
}

void add_prediction(CLI::App& sub, Overrides& o)
{
    sub.add_option("--model", o.model, "Model artifact (model.json)");
    sub.add_option("--input", o.input, "Regional CSV to predict");
}

} // namespace

int run(const std::vector<std::string>& args)
{
    CLI::App app{"Regional COVID-19 monitoring and PPE demand forecasting", "regio-forecast"};
    app.require_subcommand(1);
    Overrides o;

    auto* synth = app.add_subcommand("synth", "Write synthetic regional CSV files");
    add_common(*synth, o);
    synth->add_option("--regions", o.regions, "Number of regions (default 7)");
    synth->add_option("--rows", o.rows, "Rows per region (default 362)");
    synth->add_option("--noise", o.noise, "Multiplicative target noise (default 0.05)");

    auto* train = app.add_subcommand("train", "Train a case-study model");
    add_common(*train, o);
    add_training(*train, o);

    auto* evaluate = app.add_subcommand("evaluate", "Score one case study on held-out days");
    auto* rotate = app.add_subcommand("rotate", "Score every region in turn as the case study");
    for (auto* sub : {evaluate, rotate}) {
        add_common(*sub, o);
        add_training(*sub, o);
        sub->add_option("--bootstrap", o.bootstrap, "Bootstrap replicates (default 1000)");
    }

    auto* predict = app.add_subcommand("predict", "Predict the four targets for each input day");
    add_common(*predict, o);
    add_prediction(*predict, o);

    auto* ppe = app.add_subcommand("ppe", "Forecast daily PPE kit demand");
    add_common(*ppe, o);
    add_prediction(*ppe, o);
    ppe->add_option("--capacity", o.capacity, "Operating capacity in [0, 1] (default 0.75)");
    ppe->add_option("--personnel", o.personnel, "Health-centre personnel (default 200)");
    ppe->add_option("--schedule", o.schedule, "CSV of date,operating_capacity,personnel");

    auto* relevance = app.add_subcommand("relevance", "Score feature relevance per target");
    add_common(*relevance, o);
    relevance->add_option("--data-dir", o.data_dir, "Directory of <region>.csv files");

    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    const std::map<CLI::App*, void (*)(const RunConfig&)> commands = {
        {synth, cmd_synth},     {train, cmd_train}, {evaluate, cmd_evaluate},
        {rotate, cmd_rotate},   {predict, cmd_predict}, {ppe, cmd_ppe},
        {relevance, cmd_relevance}};

    try {
        const RunConfig cfg = o.resolve();
        validate(cfg);
        for (const auto& [sub, fn] : commands) {
            if (sub->parsed()) {
                logger()->debug("running {}", sub->get_name());
                fn(cfg);
            }
        }
        return kExitOk;
    } catch (const Error& e) {
        logger()->error("{}", e.what());
        switch (e.kind()) {
        case ErrorKind::Config: return kExitConfig;
        case ErrorKind::Data: return kExitData;
        case ErrorKind::Internal: return kExitInternal;
        }
        return kExitInternal;
    } catch (const nlohmann::json::exception& e) {
        logger()->error("malformed JSON: {}", e.what());
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        logger()->error("{}", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        logger()->error("internal error: {}", e.what());
        return kExitInternal;
    }
}

int run(int argc, char** argv)
{
    return run(std::vector<std::string>(argv, argv + argc));
}

} // namespace regio::cli
