"""Tests for chain families, finite groups and the YAML corpus registry."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from chains.chain import FLOAT, is_lazy, is_reversible, p_min, stationary
from errors import NotGeneratingError, SizeError
from generators.corpus import ChainSpec, CorpusManager, ExpectedTags, structural_mismatches
from generators.families import (
    abelian_cayley,
    biased_segment,
    cycle,
    default_degree,
    directed_lazy_cycle,
    double_star,
    hypercube_times_cycle,
    parse_element,
    transposition_walk,
)
from generators.groups import (
    abelian_group,
    generates,
    is_conjugacy_invariant,
    is_symmetric,
    symmetric_group,
    transpositions,
)
from mixing.symmetry import TRANSITIVE_TAG

F = Fraction

CORPUS_PATH = Path(__file__).resolve().parent.parent / "configs" / "corpus.yaml"


def test_cycle_metadata(lazy_cycle4) -> None:
    assert lazy_cycle4.meta["family"] == "cycle"
    assert lazy_cycle4.meta["params"] == {"n": "4", "lazy": "True"}
    assert set(lazy_cycle4.meta["tags"]) == {"lazy", "reversible", TRANSITIVE_TAG}
    assert list(lazy_cycle4.P[0]) == [F(1, 2), F(1, 4), 0, F(1, 4)]

    plain = cycle(5, lazy=False)
    assert "lazy" not in plain.meta["tags"]
    assert not is_lazy(plain)


def test_size_limits() -> None:
    with pytest.raises(SizeError):
        cycle(2)
    with pytest.raises(SizeError):
        cycle(65)
    with pytest.raises(SizeError):
        hypercube_times_cycle(4, 5)
    with pytest.raises(SizeError):
        transposition_walk(5)
    with pytest.raises(SizeError):
        double_star(0)
    # Size errors are ValueErrors too.
    with pytest.raises(ValueError):
        directed_lazy_cycle(2)


def test_hypercube_times_cycle(z2_z4) -> None:
    assert z2_z4.n == 8
    assert p_min(z2_z4) == F(1, 6)
    assert all(z2_z4.P[x, x] == F(1, 2) for x in range(8))
    assert is_reversible(z2_z4, stationary(z2_z4))


def test_abelian_cayley_is_deterministic() -> None:
    first = abelian_cayley([8], degree=3, seed=7)
    second = abelian_cayley([8], degree=3, seed=7)
    assert [list(row) for row in first.P] == [list(row) for row in second.P]
    assert first.meta["params"]["degree"] == "3"
    assert len(first.meta["params"]["generators"].split()) == 3
    assert all(value == F(1, 8) for value in stationary(first).pi)


def test_abelian_cayley_with_explicit_generators() -> None:
    walk = abelian_cayley([8], generators=["1"])
    assert walk.P[0, 1] == F(1, 2)
    assert "reversible" not in walk.meta["tags"]

    full = abelian_cayley([2, 2], generators=["1,0", "0,1", "1,1"])
    assert "reversible" in full.meta["tags"]
    assert full.labels == ("(0,0)", "(0,1)", "(1,0)", "(1,1)")

    with pytest.raises(NotGeneratingError):
        abelian_cayley([2, 2], generators=["1,0"])
    with pytest.raises(ValueError):
        abelian_cayley([2, 2], generators=["1"])


def test_transposition_walk() -> None:
    walk = transposition_walk(3)
    assert walk.n == 6
    assert walk.P[0, 0] == F(1, 2)
    assert p_min(walk) == F(1, 6)
    assert TRANSITIVE_TAG in walk.meta["tags"]


def test_biased_segment(segment3) -> None:
    assert [list(row) for row in segment3.P] == [
        [F(5, 8), F(3, 8), 0],
        [F(1, 8), F(1, 2), F(3, 8)],
        [0, F(1, 8), F(7, 8)],
    ]
    assert list(stationary(segment3).pi) == [F(1, 13), F(3, 13), F(9, 13)]
    assert p_min(segment3) == F(1, 8)
    assert biased_segment(3, "1/2").P[0, 1] == F(1, 4)
    with pytest.raises(ValueError):
        biased_segment(3, 1)
    with pytest.raises(SizeError):
        biased_segment(1)


def test_directed_cycle_and_double_star(directed3) -> None:
    assert directed3.P[0, 1] == F(1, 2)
    assert directed3.P[1, 0] == 0
    assert not is_reversible(directed3, stationary(directed3))

    star = double_star(2)
    assert star.n == 6
    assert star.labels == ("a", "b", "a0", "a1", "b0", "b1")
    assert star.P[0, 1] == F(1, 6)
    assert star.P[2, 0] == F(1, 2)


def test_float_mode_generation() -> None:
    chain = cycle(4, mode=FLOAT)
    assert not chain.exact
    assert chain.P[0, 1] == pytest.approx(0.25)


def test_group_helpers() -> None:
    s3 = symmetric_group(3)
    assert s3.order == 6
    assert s3.identity == (0, 1, 2)
    assert is_conjugacy_invariant(s3, transpositions(3))
    assert not is_conjugacy_invariant(s3, transpositions(3)[:1])

    z8 = abelian_group([8])
    assert not is_symmetric(z8, [(1,)])
    assert is_symmetric(z8, [(1,), (7,)])
    assert not generates(abelian_group([2, 2]), [(1, 0)])
    assert generates(z8, [(3,)])

    assert default_degree(8) == 3
    assert default_degree(1) == 1
    assert parse_element("1,3", [2, 2]) == (1, 1)
    with pytest.raises(ValueError):
        abelian_group([0])


def test_default_corpus_loads_and_builds() -> None:
    manager = CorpusManager(CORPUS_PATH)
    manager.refresh()
    names = manager.available()
    assert "cycle-4-lazy" in names
    assert "double-star-2" in names
    assert len(names) == 18
    spec = manager.get_spec("cycle-4-lazy")
    assert spec.expected.nonneg_curved == "yes"
    assert spec.build().n == 4
    for active in manager.active_specs():
        assert active.build().n >= 2
    with pytest.raises(KeyError):
        manager.get_spec("missing")


def test_corpus_parsing_rules(tmp_path) -> None:
    path = tmp_path / "corpus.yaml"
    path.write_text(
        "chains:\n"
        "  a-cycle:\n"
        "    family: cycle\n"
        "    parameters: {n: 3}\n"
        "    expected: {lazy: true, nonneg_curved: yes}\n"
        "  disabled-cycle:\n"
        "    family: cycle\n"
        "    parameters: {n: 4}\n"
        "    enabled: false\n"
        "  junk: 3\n",
        encoding="utf-8",
    )
    manager = CorpusManager(path)
    manager.refresh()
    assert manager.available() == ["a-cycle", "disabled-cycle"]
    assert [spec.chain_id for spec in manager.active_specs()] == ["a-cycle"]
    assert manager.get_spec("a-cycle").expected == ExpectedTags(lazy=True, nonneg_curved="yes")


def test_corpus_rejects_bad_files(tmp_path) -> None:
    unknown = tmp_path / "unknown.yaml"
    unknown.write_text("chains:\n  x:\n    family: torus\n", encoding="utf-8")
    with pytest.raises(KeyError):
        CorpusManager(unknown).refresh()

    listed = tmp_path / "listed.yaml"
    listed.write_text("chains:\n  - cycle\n", encoding="utf-8")
    with pytest.raises(ValueError):
        CorpusManager(listed).refresh()

    with pytest.raises(FileNotFoundError):
        CorpusManager(tmp_path / "absent.yaml").refresh()
    with pytest.raises(ValueError):
        CorpusManager.empty().refresh()
    with pytest.raises(ValueError):
        ExpectedTags.from_mapping({"nonneg_curved": "maybe"})
    with pytest.raises(ValueError):
        ExpectedTags.from_mapping({"lazy": "sometimes"})


def test_spec_build_and_mismatches() -> None:
    spec = ChainSpec(chain_id="ring", family="cycle", parameters={"n": 3})
    assert spec.build().n == 3
    with pytest.raises(KeyError):
        ChainSpec(chain_id="bad", family="torus").build()

    expected = ExpectedTags(lazy=True, transitive=False)
    problems = structural_mismatches(expected, {"lazy": True, "transitive": True, "reversible": None})
    assert problems == ["transitive: expected False, observed True"]
