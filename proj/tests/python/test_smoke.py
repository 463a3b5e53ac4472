"""Smoke tests for the python bindings."""

import pytest

import mibwarden as mw

TABLE1 = {
    "Normal": 600,
    "TcpSyn": 960,
    "UdpFlood": 773,
    "IcmpEcho": 632,
    "HttpFlood": 573,
    "Slowloris": 780,
    "Slowpost": 480,
    "BruteForce": 200,
}


@pytest.fixture(scope="module")
def corpus():
    return mw.synthesize_default(seed=1)


def test_synthesize_default_matches_canonical_histogram(corpus):
    assert len(corpus) == 4998
    assert corpus.histogram() == TABLE1
    assert len(corpus.attribute_names) == 11
    assert corpus.attribute_names[0] == "ifInOctets"


def test_stratified_split_protocol_arithmetic(corpus):
    train, test = mw.stratified_split(corpus, 0.7, 1)
    assert len(train) == 3498
    assert len(test) == 1500


def test_zeror_predicts_plurality(corpus):
    model = mw.train("zeror", corpus)
    assert model.default_class == "TcpSyn"
    assert model.predict([0.0] * 11) == "TcpSyn"


def test_part_on_noiseless_corpus_is_exact():
    ds = mw.synthesize_default(seed=2, noise=0.0)
    train, test = mw.stratified_split(ds, 0.7, 2)
    model = mw.train("part", train)
    report = mw.evaluate(model, test)
    assert report["accuracy"] == 1.0


def test_model_round_trip(corpus):
    train, _ = mw.stratified_split(corpus, 0.7, 1)
    model = mw.train("oner", train)
    again = mw.Model.parse(model.serialize())
    assert again == model
    assert again.learner == "oner"


def test_csv_round_trip(tmp_path, corpus):
    path = str(tmp_path / "data.csv")
    mw.write_csv(corpus, path)
    back = mw.load_csv(path)
    assert len(back) == len(corpus)
    assert back.row(17) == corpus.row(17)
    assert back.label(17) == corpus.label(17)


def test_bench_report_shape(corpus):
    report = mw.bench(corpus, seed=1)
    assert [entry["learner"] for entry in report["learners"]] == [
        "zeror",
        "oner",
        "jrip",
        "part",
        "dtable",
    ]
    assert sorted(report["ranking"]) == sorted(["zeror", "oner", "jrip", "part", "dtable"])
    assert report["ranking"][-1] == "zeror"
    assert report["train_records"] == 3498
    assert report["test_records"] == 1500


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        mw.load_csv_text("a,class\n1.0,Smurf\n")
    with pytest.raises(ValueError):
        mw.train("forest", mw.synthesize_default(seed=1))
