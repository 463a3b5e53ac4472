"""SNMP-MIB DoS traffic classification: rule learners and evaluation."""

import json as _json

from ._core import (
    ConfigError,
    DataFormatError,
    Dataset,
    Model,
    SchemaError,
    TrafficClass,
    __version__,
    bench_json,
    evaluate,
    load_csv,
    load_csv_text,
    relabel_binary,
    stratified_split,
    synthesize_default,
    synthesize_profile,
    train,
    write_csv,
    write_csv_text,
)


def bench(dataset, seed=1, split=0.7, binary=False):
    """Run the five-way bench and return the report as a dict."""
    return _json.loads(bench_json(dataset, seed=seed, split=split, binary=binary))


__all__ = [
    "ConfigError",
    "DataFormatError",
    "Dataset",
    "Model",
    "SchemaError",
    "TrafficClass",
    "__version__",
    "bench",
    "bench_json",
    "evaluate",
    "load_csv",
    "load_csv_text",
    "relabel_binary",
    "stratified_split",
    "synthesize_default",
    "synthesize_profile",
    "train",
    "write_csv",
    "write_csv_text",
]
