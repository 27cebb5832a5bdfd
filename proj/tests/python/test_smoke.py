import os
from pathlib import Path

import pytest

import gcmeta

DATA = Path(os.environ.get("GC_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))

WORKED = "r1: a :- b. r2: b :- a. r3: a. r4: b."


def test_solve_small_programs():
    assert gcmeta.solve("a v b.") == [["a"], ["b"]]
    assert gcmeta.solve("a :- not a.") == []
    assert len(gcmeta.solve("a v b. c v d.", limit=1)) == 1


def test_transform_worked_example():
    sets = gcmeta.solve(gcmeta.transform(WORKED))
    assert len(sets) == 2
    assert all(gcmeta.project(s) == ["a", "b"] for s in sets)
    assert sum('phi("a","b")' in s for s in sets) == 1


def test_omega_contains_notok():
    assert "notok" in gcmeta.omega("r1: a.")


def test_integrate_worked_qbf():
    guess = (DATA / "qbf_guess.dl").read_text()
    check = (DATA / "qbf_check.dl").read_text()
    program = gcmeta.integrate(guess, check, opts="mod,dep")
    witnesses = sorted(sorted(l for l in s if l.lstrip("-") in ("x0", "x1")) for s in gcmeta.solve(program))
    assert witnesses == [["-x0", "-x1"], ["-x0", "x1"]]


def test_brute_force_agrees():
    text = "a :- not b. b :- not a. c v d :- a."
    assert gcmeta.brute_force(text) == gcmeta.solve(text)


def test_hcf_and_errors():
    assert gcmeta.is_hcf("a v b. a :- c.")
    assert not gcmeta.is_hcf("a v b. a :- b. b :- a.")
    with pytest.raises(gcmeta.ParseError):
        gcmeta.solve("a :- b")
    with pytest.raises(gcmeta.GroundError):
        gcmeta.ground("p(X) :- not q(X).")
    with pytest.raises(gcmeta.VocabularyError):
        gcmeta.transform("inS(a).")
    with pytest.raises(ValueError):
        gcmeta.ground("a.", mode="lazy")


def test_ground_and_normalize():
    assert gcmeta.ground("t(0). t(1). p(T) :- t(T).").splitlines() == [
        "t(0).", "t(1).", "p(0) :- t(0).", "p(1) :- t(1)."]
    assert gcmeta.normalize("a  :-b,not c.") == "a :- b, not c."
