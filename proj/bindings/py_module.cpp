// py_module.cpp
//
// Python bindings for the core operations: dataset I/O and synthesis, the
// stratified split, the five learners, prediction, evaluation and the
// five-way bench.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mibwarden/bench.hpp"
#include "mibwarden/collector.hpp"
#include "mibwarden/csv.hpp"
#include "mibwarden/errors.hpp"
#include "mibwarden/synth.hpp"

namespace py = pybind11;
using namespace mibwarden;

namespace {

std::string class_name(traffic_class c) { return std::string(to_string(c)); }

rule_model train_by_name(const std::string &name, const dataset &ds, std::uint64_t seed) {
    const auto id = learner_from(name);
    if (!id)
        throw config_error("unknown learner '" + name + "'");
    return train(*id, ds, seed);
}

py::dict report_dict(const eval_report &r) {
    py::dict out;
    out["learner"] = r.learner;
    out["accuracy"] = r.accuracy;
    out["weighted_precision"] = r.weighted_precision;
    out["weighted_recall"] = r.weighted_recall;
    out["weighted_f_measure"] = r.weighted_f;
    py::list per_class;
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        py::dict m;
        m["class"] = class_name(all_traffic_classes()[c]);
        m["tp"] = r.per_class[c].tp;
        m["fp"] = r.per_class[c].fp;
        m["fn"] = r.per_class[c].fn;
        m["tn"] = r.per_class[c].tn;
        m["precision"] = r.per_class[c].precision;
        m["recall"] = r.per_class[c].recall;
        m["f_measure"] = r.per_class[c].f_measure;
        per_class.append(m);
    }
    out["per_class"] = per_class;
    py::list matrix;
    for (const auto &row : r.matrix.counts) {
        py::list cells;
        for (const auto n : row)
            cells.append(n);
        matrix.append(cells);
    }
    out["matrix"] = matrix;
    out["train_seconds"] = r.train_seconds;
    out["test_seconds"] = r.test_seconds;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SNMP-MIB DoS traffic classification: rule learners and evaluation";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<data_format_error>(m, "DataFormatError", PyExc_ValueError);
    py::register_exception<schema_error>(m, "SchemaError", PyExc_ValueError);

    py::enum_<traffic_class>(m, "TrafficClass")
        .value("Normal", traffic_class::normal)
        .value("TcpSyn", traffic_class::tcp_syn)
        .value("UdpFlood", traffic_class::udp_flood)
        .value("IcmpEcho", traffic_class::icmp_echo)
        .value("HttpFlood", traffic_class::http_flood)
        .value("Slowloris", traffic_class::slowloris)
        .value("Slowpost", traffic_class::slowpost)
        .value("BruteForce", traffic_class::brute_force);

    py::class_<dataset>(m, "Dataset")
        .def_property_readonly("provenance", &dataset::provenance)
        .def_property_readonly("attribute_names",
                               [](const dataset &ds) { return ds.get_schema().names(); })
        .def_property_readonly("schema_fingerprint",
                               [](const dataset &ds) { return ds.get_schema().fingerprint(); })
        .def("__len__", &dataset::size)
        .def("row",
             [](const dataset &ds, std::size_t i) {
                 if (i >= ds.size())
                     throw py::index_error();
                 return ds.records()[i].values;
             })
        .def("label",
             [](const dataset &ds, std::size_t i) -> py::object {
                 if (i >= ds.size())
                     throw py::index_error();
                 const auto &label = ds.records()[i].label;
                 return label ? py::cast(class_name(*label)) : py::none();
             })
        .def("histogram", [](const dataset &ds) {
            py::dict out;
            const auto counts = class_histogram(ds);
            for (std::size_t c = 0; c < traffic_class_count; ++c)
                out[class_name(all_traffic_classes()[c]).c_str()] = counts[c];
            return out;
        });

    py::class_<rule_model>(m, "Model")
        .def_property_readonly("learner",
                               [](const rule_model &mo) { return std::string(to_string(mo.learner)); })
        .def_property_readonly("schema_fingerprint",
                               [](const rule_model &mo) { return mo.schema_fingerprint; })
        .def_property_readonly("default_class",
                               [](const rule_model &mo) { return class_name(mo.default_class); })
        .def_property_readonly("rule_count",
                               [](const rule_model &mo) { return mo.ordered_rules.size(); })
        .def("predict",
             [](const rule_model &mo, const std::vector<double> &values) {
                 mib_record r;
                 r.values = values;
                 return class_name(predict(mo, r));
             })
        .def("predict_all",
             [](const rule_model &mo, const dataset &ds) {
                 std::vector<std::string> out;
                 for (const auto c : predict_all(mo, ds))
                     out.push_back(class_name(c));
                 return out;
             })
        .def("serialize", &serialize_model)
        .def_static("parse", &parse_model_text)
        .def("save", &write_model_file)
        .def_static("load", &load_model_file)
        .def("__eq__", [](const rule_model &a, const rule_model &b) { return a == b; });

    m.def("load_csv", &load_csv_file, py::arg("path"));
    m.def(
        "load_csv_text",
        [](const std::string &text, const std::string &provenance) {
            std::istringstream in(text);
            return load_csv(in, provenance);
        },
        py::arg("text"), py::arg("provenance") = "<memory>");
    m.def("write_csv", &write_csv_file, py::arg("dataset"), py::arg("path"));
    m.def("write_csv_text", [](const dataset &ds) {
        std::ostringstream out;
        write_csv(ds, out);
        return out.str();
    });

    m.def(
        "synthesize_default",
        [](std::uint64_t seed, double noise) {
            return synthesize(synth_profile::default_profile(noise), seed);
        },
        py::arg("seed") = 1, py::arg("noise") = 0.03,
        "Generate the default interface-group corpus (4998 records).");
    m.def(
        "synthesize_profile",
        [](const std::string &profile_json, std::uint64_t seed) {
            std::istringstream in(profile_json);
            return synthesize(load_profile(in), seed);
        },
        py::arg("profile_json"), py::arg("seed") = 1);

    m.def("stratified_split", &stratified_split, py::arg("dataset"), py::arg("train_fraction"),
          py::arg("seed"));
    m.def("relabel_binary", &relabel_binary, py::arg("dataset"),
          py::arg("attack_stand_in") = traffic_class::tcp_syn);

    m.def("train", &train_by_name, py::arg("learner"), py::arg("dataset"), py::arg("seed") = 1,
          "Train one of zeror|oner|jrip|part|dtable with default parameters.");

    m.def(
        "evaluate",
        [](const rule_model &mo, const dataset &ds) { return report_dict(evaluate(mo, ds)); },
        py::arg("model"), py::arg("dataset"));

    m.def(
        "bench_json",
        [](const dataset &ds, std::uint64_t seed, double split, bool binary) {
            bench_config cfg;
            cfg.seed = seed;
            cfg.split = split;
            cfg.binary = binary;
            cfg.jrip.seed = seed;
            cfg.part.seed = seed;
            cfg.dtable.seed = seed;
            return bench_report_json(run_bench(ds, cfg));
        },
        py::arg("dataset"), py::arg("seed") = 1, py::arg("split") = 0.7,
        py::arg("binary") = false,
        "Run the five-way bench and return the JSON report text.");

#ifdef MIBWARDEN_VERSION
    m.attr("__version__") = MIBWARDEN_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
