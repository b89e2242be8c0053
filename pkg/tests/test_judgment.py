from fractions import Fraction as Q

import pytest

from probagg.agenda import agenda_from_texts
from probagg.judgment import (
    IrrationalJudgmentError,
    Judgment,
    JudgmentError,
    Measure,
    check_rational,
    consistent_with_truth,
    extension_bounds,
    judgment_from_measure,
    unique_joint,
)
from probagg.logic import Language

from conftest import feasible_by_vertices, rationality_cases


def test_table_one_rows_j1_j3_rational(profile):
    j1, _, j3 = profile
    assert check_rational(j1).rational and check_rational(j3).rational
    for j in (j1, j3):
        cert = j.certificate
        assert sum(cert.weights) == 1
        assert all(cert.prob(f) == j[f] for f in j.agenda)


def test_row_j2_has_no_extending_measure(profile):
    # J2(b) = J2(a & b) forces P(!a & b) = 0, yet J2(b & c) - J2(a & b & c) = 1/10
    j2 = profile[1]
    res = check_rational(j2)
    assert not res.rational
    assert {f.text for f in res.witness} == {"b", "a & b", "b & c", "a & b & c"}
    assert not feasible_by_vertices(j2)


def test_monotonicity_violation():
    x = agenda_from_texts(["a", "b"], ["a", "a & b"])
    j = Judgment.from_values(x, {"a": "0.3", "a & b": "0.5"})
    assert not j.rational


def test_certain_judgment_certificate():
    x = agenda_from_texts(["a"], ["a"])
    j = Judgment.from_values(x, {"a": 1})
    assert j.rational
    assert j.certificate.weights == (0, 1)


def test_complement_law_enforced():
    x = agenda_from_texts(["a"], ["a"])
    with pytest.raises(JudgmentError):
        Judgment.from_values(x, {"a": "0.3", "!a": "0.6"}, fill_complements=False)


def test_range_and_domain_errors():
    x = agenda_from_texts(["a", "b"], ["a"])
    with pytest.raises(JudgmentError):
        Judgment.from_values(x, {"a": "1.2"})
    with pytest.raises(JudgmentError):
        Judgment.from_values(x, {"a": "0.5", "b": "0.5"})


def test_floats_refused_in_rational_mode():
    x = agenda_from_texts(["a"], ["a"])
    with pytest.raises(JudgmentError):
        Judgment.from_values(x, {"a": 0.5})
    assert Judgment.from_values(x, {"a": 0.5}, eps=1e-9).rational


def test_bounds_unique_joint_row(profile):
    j1 = profile[0]
    target = j1.agenda.lang.parse("b & !c")
    b = extension_bounds(j1, target)
    assert (b.lo, b.hi) == (Q(1, 2), Q(1, 2))
    taut = j1.agenda.lang.parse("a | !a")
    assert tuple(extension_bounds(j1, taut)) == (1, 1)


def test_bounds_free_atom():
    x = agenda_from_texts(["a", "b"], ["a"])
    j = Judgment.from_values(x, {"a": "1/2"})
    b = extension_bounds(j, x.lang.parse("a & b"))
    assert (b.lo, b.hi) == (0, Q(1, 2))
    assert not unique_joint(j)


def test_bounds_need_rational_input(profile):
    with pytest.raises(IrrationalJudgmentError):
        extension_bounds(profile[1], profile.agenda.lang.parse("b & !c"))


def test_consistency_with_truth(profile):
    x = agenda_from_texts(["a"], ["a"])
    assert consistent_with_truth(Judgment.from_values(x, {"a": 1}), x.parse("a"))
    assert not consistent_with_truth(Judgment.from_values(x, {"a": "0.7"}), x.parse("a"))
    j1 = profile[0]
    assert consistent_with_truth(j1, j1.agenda.lang.parse("b | !b"))
    assert not consistent_with_truth(j1, j1.agenda.lang.parse("b & !b"))


def test_uniform_measure():
    lang = Language(("a", "b", "c"))
    x = agenda_from_texts(["a", "b", "c"], ["a"])
    j = judgment_from_measure(Measure.uniform(lang), x)
    assert j[x.parse("a")] == Q(1, 2)


def test_unique_joint_table_one(profile):
    assert unique_joint(profile[0])
    assert unique_joint(profile[2])


def test_quasi_measure_reproduces_values(profile):
    for j in profile:
        q = j.quasi_measure
        assert sum(q) == 1
        assert all(sum(w for v, w in enumerate(q) if f.mask >> v & 1) == j[f] for f in j.agenda)


def test_oracle_equivalence():
    cases = rationality_cases(200)
    verdicts = [check_rational(j).rational for j in cases]
    assert verdicts == [feasible_by_vertices(j) for j in cases]
    assert 0 < sum(verdicts) < len(verdicts)


def test_certificates_sound():
    for j in rationality_cases(60, seed=11):
        res = check_rational(j)
        if res.rational:
            assert all(v >= 0 for v in res.certificate.weights)
            assert all(res.certificate.prob(f) == j[f] for f in j.agenda)
        else:
            assert res.witness
            sub = agenda_from_texts(list(j.agenda.lang.atoms),
                                    [f.text for f in res.witness])
            restricted = Judgment(sub, {f: j[j.agenda.lookup(f)] for f in sub})
            assert not restricted.rational
