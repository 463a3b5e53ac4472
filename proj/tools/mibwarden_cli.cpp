// mibwarden_cli.cpp
//
// Command-line front end. Exit codes: 0 ok, 2 config/flag error, 3 data
// format error, 4 schema mismatch, 5 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mibwarden/bench.hpp"
#include "mibwarden/collector.hpp"
#include "mibwarden/csv.hpp"
#include "mibwarden/errors.hpp"
#include "mibwarden/synth.hpp"

#ifdef __unix__
#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>
#endif

namespace {

using namespace mibwarden;

std::uint64_t default_seed() {
    if (const char *env = std::getenv("MIBWARDEN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw config_error(std::string("MIBWARDEN_SEED is not an integer: '") + env + "'");
        }
    }
    return 1;
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw data_format_error("cannot write '" + path + "'");
    out << text;
}

struct cli_options {
    std::uint64_t seed = 1;

    // synth
    std::string synth_out;
    std::string profile_path;
    double noise = -1.0; // <0 keeps the profile's own rate

    // bench
    std::string data_path;
    double split = 0.7;
    std::string json_out;
    bool binary = false;

    // train/eval/predict
    std::string learner_name = "jrip";
    std::string model_out;
    std::string model_path;
    std::string input_path;
    jrip_params jrip;
    part_params part;
    dtable_params dtable;
    oner_params oner;

    // classify-stream
    std::string schema_csv;
    std::int64_t interval = 15;
    unsigned wrap_bits = 32;
    std::int64_t max_gap = 4;
    std::size_t limit = 0;
    int udp_port = -1;
};

synth_profile resolve_profile(const cli_options &opt) {
    synth_profile profile =
        opt.profile_path.empty() ? synth_profile::default_profile() : load_profile_file(opt.profile_path);
    if (opt.noise >= 0.0)
        profile.noise_rate = opt.noise;
    return profile;
}

int cmd_synth(const cli_options &opt) {
    const dataset ds = synthesize(resolve_profile(opt), opt.seed);
    write_csv_file(ds, opt.synth_out);
    std::cout << "wrote " << ds.size() << " records (" << ds.get_schema().size()
              << " attributes) to " << opt.synth_out << " [seed " << opt.seed << "]\n";
    return 0;
}

bench_config make_bench_config(const cli_options &opt) {
    bench_config cfg;
    cfg.split = opt.split;
    cfg.seed = opt.seed;
    cfg.binary = opt.binary;
    cfg.jrip = opt.jrip;
    cfg.jrip.seed = opt.seed;
    cfg.part = opt.part;
    cfg.part.seed = opt.seed;
    cfg.dtable = opt.dtable;
    cfg.dtable.seed = opt.seed;
    cfg.oner = opt.oner;
    return cfg;
}

int cmd_bench(const cli_options &opt) {
    const dataset ds = load_csv_file(opt.data_path);
    const bench_result result = run_bench(ds, make_bench_config(opt));
    print_bench_report(result, std::cout);
    if (!opt.json_out.empty()) {
        write_text_file(opt.json_out, bench_report_json(result));
        std::cout << "\nwrote JSON report to " << opt.json_out << '\n';
    }
    return 0;
}

int cmd_train(const cli_options &opt) {
    const auto id = learner_from(opt.learner_name);
    if (!id)
        throw config_error("unknown learner '" + opt.learner_name +
                           "' (expected zeror|oner|jrip|part|dtable)");
    const dataset ds = load_csv_file(opt.data_path);

    rule_model model;
    switch (*id) {
    case learner_id::zeror: model = train_zeror(ds); break;
    case learner_id::oner: model = train_oner(ds, opt.oner); break;
    case learner_id::jrip: {
        jrip_params p = opt.jrip;
        p.seed = opt.seed;
        model = train_jrip(ds, p);
        break;
    }
    case learner_id::part: {
        part_params p = opt.part;
        p.seed = opt.seed;
        model = train_part(ds, p);
        break;
    }
    case learner_id::dtable: {
        dtable_params p = opt.dtable;
        p.seed = opt.seed;
        model = train_decision_table(ds, p);
        break;
    }
    }
    write_model_file(model, opt.model_out);
    std::cout << "trained " << to_string(model.learner) << " on " << ds.size()
              << " records; wrote " << opt.model_out << '\n';
    return 0;
}

int cmd_eval(const cli_options &opt) {
    const rule_model model = load_model_file(opt.model_path);
    const dataset ds = load_csv_file(opt.data_path);
    const eval_report report = evaluate(model, ds);
    print_eval_report(report, std::cout);
    if (!opt.json_out.empty()) {
        write_text_file(opt.json_out, eval_report_json(report, "single"));
        std::cout << "wrote JSON report to " << opt.json_out << '\n';
    }
    return 0;
}

int cmd_predict(const cli_options &opt) {
    const rule_model model = load_model_file(opt.model_path);
    const dataset ds = load_csv_file(opt.input_path);
    if (ds.get_schema().fingerprint() != model.schema_fingerprint)
        throw schema_error("input schema fingerprint " + ds.get_schema().fingerprint() +
                           " does not match model schema " + model.schema_fingerprint);
    for (const auto &record : ds.records())
        std::cout << to_string(predict(model, record)) << '\n';
    return 0;
}

#ifdef __unix__
// feeds datagrams (one snapshot line each) into stream_classify via a pipe
class udp_line_stream {
public:
    explicit udp_line_stream(int port) {
        fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
        if (fd_ < 0)
            throw config_error("cannot create UDP socket");
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_ANY);
        addr.sin_port = htons(static_cast<std::uint16_t>(port));
        if (::bind(fd_, reinterpret_cast<sockaddr *>(&addr), sizeof addr) != 0) {
            ::close(fd_);
            throw config_error("cannot bind UDP port " + std::to_string(port));
        }
    }
    ~udp_line_stream() { ::close(fd_); }

    bool next_line(std::string &line) {
        char buf[65536];
        const ssize_t n = ::recvfrom(fd_, buf, sizeof buf, 0, nullptr, nullptr);
        if (n < 0)
            return false;
        line.assign(buf, static_cast<std::size_t>(n));
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
            line.pop_back();
        return true;
    }

private:
    int fd_ = -1;
};
#endif

int cmd_classify_stream(const cli_options &opt) {
    const rule_model model = load_model_file(opt.model_path);

    delta_config cfg;
    cfg.expected_interval = opt.interval;
    if (opt.wrap_bits == 64)
        cfg.wrap_modulus = 0; // natural 64-bit wrap
    else if (opt.wrap_bits < 64)
        cfg.wrap_modulus = 1ULL << opt.wrap_bits;
    else
        throw config_error("--wrap-bits must be <= 64");
    cfg.max_gap = opt.max_gap;

    schema hint;
    const schema *hint_ptr = nullptr;
    if (!opt.schema_csv.empty()) {
        std::vector<std::string> names;
        std::size_t start = 0;
        while (start <= opt.schema_csv.size()) {
            const std::size_t comma = opt.schema_csv.find(',', start);
            names.push_back(opt.schema_csv.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        hint = schema(names);
        hint_ptr = &hint;
    }

    stream_stats stats;
    if (opt.udp_port >= 0) {
#ifdef __unix__
        udp_line_stream udp(opt.udp_port);
        std::cerr << "listening on UDP port " << opt.udp_port << std::endl;
        line_classifier classifier(model, cfg, std::cout, std::cerr, hint_ptr);
        std::string line;
        while (udp.next_line(line)) {
            classifier.feed(line);
            if (opt.limit > 0 && classifier.stats().emitted >= opt.limit)
                break;
        }
        stats = classifier.stats();
#else
        throw config_error("UDP mode is unavailable on this platform");
#endif
    } else {
        stats = stream_classify(std::cin, model, cfg, std::cout, std::cerr, hint_ptr, opt.limit);
    }
    std::cerr << "classified " << stats.emitted << " intervals, " << stats.line_errors
              << " bad lines, " << stats.degraded << " degraded\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"SNMP-MIB DoS traffic classification toolkit"};
    app.require_subcommand(1);

    cli_options opt;
    try {
        opt.seed = default_seed();
    } catch (const config_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    auto add_seed = [&](CLI::App *cmd) { cmd->add_option("--seed", opt.seed, "random seed"); };
    auto add_learner_params = [&](CLI::App *cmd) {
        cmd->add_option("--folds", opt.jrip.folds, "RIPPER grow/prune folds");
        cmd->add_option("--min-covered", opt.jrip.min_covered,
                        "positives a RIPPER rule must cover");
        cmd->add_option("--optimizations", opt.jrip.optimizations, "RIPPER optimization passes");
        cmd->add_option("--confidence", opt.part.confidence, "PART pruning confidence");
        cmd->add_option("--min-leaf", opt.part.min_leaf, "PART minimum records per branch");
        cmd->add_option("--max-stale", opt.dtable.max_stale,
                        "decision-table best-first stale limit");
        cmd->add_option("--min-bucket", opt.oner.min_bucket, "OneR minimum bucket size");
    };

    CLI::App *synth = app.add_subcommand("synth", "generate a synthetic labeled dataset");
    synth->add_option("--out", opt.synth_out, "output CSV path")->required();
    synth->add_option("--profile", opt.profile_path, "profile JSON (default: interface group)");
    synth->add_option("--noise", opt.noise, "override profile noise rate");
    add_seed(synth);

    CLI::App *bench = app.add_subcommand("bench", "train and compare all five learners");
    bench->add_option("--data", opt.data_path, "labeled CSV dataset")->required();
    bench->add_option("--split", opt.split, "train fraction")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    bench->add_option("--json", opt.json_out, "write the JSON report here");
    bench->add_flag("--binary", opt.binary, "collapse attacks into one class first");
    add_seed(bench);
    add_learner_params(bench);

    CLI::App *train_cmd = app.add_subcommand("train", "train one learner and save the model");
    train_cmd->add_option("--data", opt.data_path, "labeled CSV dataset")->required();
    train_cmd->add_option("--learner", opt.learner_name, "zeror|oner|jrip|part|dtable")
        ->required();
    train_cmd->add_option("--out", opt.model_out, "model file path")->required();
    add_seed(train_cmd);
    add_learner_params(train_cmd);

    CLI::App *eval_cmd = app.add_subcommand("eval", "evaluate a model on a labeled dataset");
    eval_cmd->add_option("--model", opt.model_path, "model file")->required();
    eval_cmd->add_option("--data", opt.data_path, "labeled CSV dataset")->required();
    eval_cmd->add_option("--json", opt.json_out, "write the JSON report here");

    CLI::App *predict_cmd = app.add_subcommand("predict", "classify CSV rows");
    predict_cmd->add_option("--model", opt.model_path, "model file")->required();
    predict_cmd->add_option("--input", opt.input_path, "CSV rows (labeled or not)")->required();

    CLI::App *stream_cmd =
        app.add_subcommand("classify-stream", "classify a live snapshot stream");
    stream_cmd->add_option("--model", opt.model_path, "model file")->required();
    stream_cmd->add_option("--schema", opt.schema_csv,
                           "comma-separated attribute names (default: from first line)");
    stream_cmd->add_option("--interval", opt.interval, "expected poll interval, seconds");
    stream_cmd->add_option("--wrap-bits", opt.wrap_bits, "counter width (32 or 64)");
    stream_cmd->add_option("--max-gap", opt.max_gap, "missed intervals before assuming reset");
    stream_cmd->add_option("--limit", opt.limit, "stop after N classifications (0 = none)");
    stream_cmd->add_option("--udp", opt.udp_port, "listen for one-line datagrams on this port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed())
            return cmd_synth(opt);
        if (bench->parsed())
            return cmd_bench(opt);
        if (train_cmd->parsed())
            return cmd_train(opt);
        if (eval_cmd->parsed())
            return cmd_eval(opt);
        if (predict_cmd->parsed())
            return cmd_predict(opt);
        if (stream_cmd->parsed())
            return cmd_classify_stream(opt);
    } catch (const config_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const data_format_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const schema_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    }
    return 2;
}
