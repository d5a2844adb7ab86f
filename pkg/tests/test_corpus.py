from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pytest

from isoscreen.corpus import (
    DATA_DIR_ENV,
    CorpusEntry,
    builtin_corpus,
    bundled_entries,
    corpus_entry,
    external_entries,
    ingest_pair,
    parse_manifest,
    rook_graph,
)
from isoscreen.errors import ArgumentError, CorpusError
from isoscreen.graph import detect_srg
from isoscreen.graph6 import encode_edge_list, encode_graph6
from isoscreen.linalg import sym_eig

from .graphs import cycle_plus_isolated, single_edge, star

BUNDLED_NAMES = ["fig1-isospectral", "L2-3", "L3-4-pair", "L3-5-pair"]


@pytest.fixture(autouse=True)
def no_data_dir_env(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv(DATA_DIR_ENV, raising=False)


def write_pair(root: Path, name: str = "iso") -> None:
    root.mkdir(parents=True, exist_ok=True)
    (root / f"{name}-a.g6").write_text(encode_graph6(star()) + "\n")
    (root / f"{name}-b.g6").write_text(encode_graph6(cycle_plus_isolated()) + "\n")


def test_bundled_entry_names():
    assert [entry.name for entry in builtin_corpus()] == BUNDLED_NAMES


def test_bundled_manifest_has_no_entries():
    assert external_entries() == []


def test_isospectral_entry_spectra_agree():
    g1, g2 = corpus_entry("fig1-isospectral").graphs
    assert np.allclose(sym_eig(g1.adjacency).values, sym_eig(g2.adjacency).values, atol=1e-10)


@pytest.mark.parametrize(
    "name, params",
    [
        ("L2-3", (9, 4, 1, 2)),
        ("L3-4-pair", (16, 9, 4, 6)),
        ("L3-5-pair", (25, 12, 5, 6)),
    ],
)
def test_bundled_srg_parameters(name, params):
    entry = corpus_entry(name)
    assert entry is not None
    assert all(detect_srg(g).as_tuple() == params for g in entry.graphs)
    assert entry.is_pair == (name != "L2-3")
    assert entry.provenance


def test_rook_graph_of_order_three():
    g = rook_graph(3)
    assert g.n == 9
    assert set(g.degrees()) == {4}


def test_unknown_entry():
    assert corpus_entry("no-such-entry") is None


def test_entry_validation():
    with pytest.raises(CorpusError, match="expected 1 or 2 graphs"):
        CorpusEntry("three", (star(), star(), star()), "")
    with pytest.raises(CorpusError, match="different vertex counts"):
        CorpusEntry("uneven", (star(), single_edge()), "")


def test_parse_manifest():
    text = "# header\n\niso iso-a.g6,iso-b.g6 hand-made pair  # trailing\nsolo one.g6\n"
    assert parse_manifest(text) == [
        ("iso", ["iso-a.g6", "iso-b.g6"], "hand-made pair"),
        ("solo", ["one.g6"], ""),
    ]


def test_parse_manifest_skips_malformed_lines(caplog: pytest.LogCaptureFixture):
    with caplog.at_level(logging.WARNING, logger="isoscreen"):
        records = parse_manifest("justaname\n-bad a.g6\nok a.g6\n")
    assert [name for name, _, _ in records] == ["ok"]
    assert "Skipping manifest line 1" in caplog.text
    assert "Skipping manifest line 2" in caplog.text


def test_external_entries_from_data_dir(tmp_path: Path):
    write_pair(tmp_path)
    (tmp_path / "path.edges").write_text("n 3\n1 2\n2 3\n")
    (tmp_path / "manifest").write_text("iso iso-a.g6,iso-b.g6 star and square\npath path.edges\n")

    entries = external_entries(tmp_path)
    assert [e.name for e in entries] == ["iso", "path"]
    assert entries[0].graphs == (star(), cycle_plus_isolated())
    assert entries[0].provenance == "star and square"
    assert entries[1].provenance == "external data"
    assert [e.name for e in builtin_corpus(tmp_path)] == BUNDLED_NAMES + ["iso", "path"]


def test_data_dir_from_environment(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    write_pair(tmp_path)
    (tmp_path / "manifest").write_text("iso iso-a.g6,iso-b.g6\n")
    monkeypatch.setenv(DATA_DIR_ENV, str(tmp_path))
    entry = corpus_entry("iso")
    assert entry is not None and entry.is_pair


def test_duplicate_and_builtin_names_are_skipped(tmp_path: Path, caplog: pytest.LogCaptureFixture):
    write_pair(tmp_path)
    (tmp_path / "manifest").write_text("L2-3 iso-a.g6\niso iso-a.g6\niso iso-b.g6\n")
    with caplog.at_level(logging.WARNING, logger="isoscreen"):
        entries = external_entries(tmp_path)
    assert len(entries) == 1
    assert entries[0].graphs == (star(),)
    assert "Skipping duplicate corpus entry 'L2-3'" in caplog.text
    assert "Skipping duplicate corpus entry 'iso'" in caplog.text


def test_corrupt_file_raises(tmp_path: Path):
    (tmp_path / "bad.g6").write_text("D?\n")
    (tmp_path / "manifest").write_text("bad bad.g6\n")
    with pytest.raises(CorpusError, match="corpus entry 'bad': cannot load bad.g6"):
        external_entries(tmp_path)


def test_missing_file_raises(tmp_path: Path):
    (tmp_path / "manifest").write_text("gone gone.g6\n")
    with pytest.raises(CorpusError, match="cannot load gone.g6"):
        external_entries(tmp_path)


def test_ingest_round_trip(tmp_path: Path):
    src = tmp_path / "src"
    src.mkdir()
    (src / "star.edges").write_text(encode_edge_list(star()))
    (src / "square.g6").write_text(encode_graph6(cycle_plus_isolated()))
    data = tmp_path / "data"

    entry = ingest_pair([src / "star.edges", src / "square.g6"], "iso-again", "hand\nmade", data)
    assert entry.graphs == (star(), cycle_plus_isolated())
    assert (data / "iso-again-a.g6").read_text() == "D?{\n"
    assert (data / "manifest").read_text() == "iso-again iso-again-a.g6,iso-again-b.g6 hand made\n"

    loaded = corpus_entry("iso-again", data)
    assert loaded is not None
    assert loaded.graphs == entry.graphs
    assert loaded.provenance == "hand made"


def test_ingest_rejects_existing_and_invalid_names(tmp_path: Path):
    src = tmp_path / "star.g6"
    src.write_text("D?{\n")
    data = tmp_path / "data"
    ingest_pair([src], "solo", "", data)

    with pytest.raises(ArgumentError, match="already exists"):
        ingest_pair([src], "solo", "", data)
    with pytest.raises(ArgumentError, match="already exists"):
        ingest_pair([src], "L2-3", "", data)
    with pytest.raises(ArgumentError, match="invalid corpus entry name"):
        ingest_pair([src], "two words", "", data)


def test_ingest_rejects_mismatched_sizes(tmp_path: Path):
    (tmp_path / "star.g6").write_text("D?{\n")
    (tmp_path / "edge.edges").write_text("n 2\n1 2\n")
    data = tmp_path / "data"
    with pytest.raises(CorpusError, match="different vertex counts"):
        ingest_pair([tmp_path / "star.g6", tmp_path / "edge.edges"], "uneven", "", data)
    assert not (data / "manifest").exists()


@pytest.mark.parametrize(
    "name, source",
    [
        ("fig1-isospectral", "spectrum {-2, 0, 0, 0, 2}"),
        ("L2-3", "3x3 grid"),
        ("L3-4-pair", "Klein four-group (graph 1) and the cyclic group Z4 (graph 2)"),
        ("L3-5-pair", "Cayley table of Z5 (graph 1)"),
    ],
)
def test_bundled_provenance_names_its_source(name, source):
    entry = corpus_entry(name)
    assert entry is not None
    assert source in entry.provenance
