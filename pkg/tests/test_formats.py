import io
import json

import pytest

from msgvm.agglomerative import msg_run
from msgvm.analysis import alpha_profile, sweep
from msgvm.formats import (FormatError, format_dendrogram, format_partition, format_profile,
                           read_annotation, read_dendrogram, read_partition, read_profile,
                           sweep_from_json, sweep_to_json)


def test_partition_roundtrip(karate):
    p = msg_run(karate, 3).partition
    text = format_partition(p)
    assert read_partition(io.StringIO(text), karate) == p


@pytest.mark.parametrize("text, msg", [
    ("zz\t0\n", "unknown"),
    ("a\t0\na\t1\nb\t0\n", "twice"),
    ("a\t0\n", "no community"),
    ("a\tx\nb\t0\n", "bad community"),
    ("a\t0\t1\n", "2 columns"),
])
def test_partition_errors(single_edge, text, msg):
    with pytest.raises(FormatError, match=msg):
        read_partition(io.StringIO(text), single_edge)


def test_dendrogram_roundtrip(karate):
    d = msg_run(karate, 2).dendrogram
    again = read_dendrogram(io.StringIO(format_dendrogram(d)), karate.n)
    assert again.merges == d.merges
    assert again.depth == d.depth


def test_sweep_json_roundtrip(karate):
    r = sweep(karate, range(1, 6), network="karate")
    text = json.dumps(sweep_to_json(r))
    back = sweep_from_json(json.loads(text))
    assert back.records == r.records and back.L == r.L
    d = json.loads(text)
    assert set(d) >= {"schema_version", "network", "L", "records", "l_opt", "q_opt"}


def test_profile_roundtrip(karate):
    r = sweep(karate, range(1, 89), network="karate")
    prof = alpha_profile([r])
    a, v = read_profile(io.StringIO(format_profile(prof)))
    assert (a == prof.alphas.round(3)).all()
    assert (v == prof.values).all()


def test_annotation_reader():
    ann = read_annotation(io.StringIO("# c\nx\tglycolysis, tca\ny\nx\tppp\n"))
    assert ann.pathways["x"] == {"glycolysis", "tca", "ppp"}
    assert ann.pathways["y"] == frozenset()
