import random
from fractions import Fraction as Q

import pytest

from probagg.agenda import agenda_from_texts
from probagg.generators import profile_pair, random_weights
from probagg.judgment import Judgment
from probagg.pooling import (
    PoolingError,
    Profile,
    Weights,
    check_consensus_compatibility,
    check_independence,
    is_dictatorial,
    linear_pool,
    linear_rule,
)

TABLE2 = ["0.7", "17/30", "0.4", "23/30", "7/15", "0.3", "7/30", "1/6"]


def test_table_two_exact(profile, thirds):
    f = linear_pool(profile, thirds)
    assert [f[g] for g in profile.agenda.base] == [Q(x) for x in TABLE2]
    assert f.name == "F"


def test_identity_for_single_judge(profile):
    p = Profile(profile.agenda, [profile[0]])
    assert linear_pool(p, Weights.equal(1)) == profile[0]


def test_dictatorship_returns_judge(profile):
    w = Weights((Q(1), Q(0), Q(0)))
    assert linear_pool(profile, w) == profile[0]
    assert is_dictatorial(w) == 0
    assert is_dictatorial(Weights.equal(3)) is None
    assert is_dictatorial(Weights.parse(["0.5", "0.5"])) is None


def test_weights_validation():
    with pytest.raises(PoolingError):
        Weights.parse(["0.5", "0.4"])
    with pytest.raises(PoolingError):
        Weights.parse(["1.5", "-0.5"])


def test_pool_certificate_is_mixture():
    x = agenda_from_texts(["a", "b"], ["a", "b", "a & b"])
    js = [Judgment.from_values(x, {"a": "0.5", "b": "0.5", "a & b": "0.25"}),
          Judgment.from_values(x, {"a": "0.9", "b": "0.2", "a & b": "0.1"})]
    f = linear_pool(Profile(x, js), Weights.parse(["1/4", "3/4"]))
    assert f.rational
    assert all(f.certificate.prob(g) == f[g] for g in x)


def test_consensus_on_example_profile(profile):
    rng = random.Random(3)
    for _ in range(5):
        rep = check_consensus_compatibility(linear_rule(random_weights(3, rng)), profile)
        assert rep.candidates == 256 and rep.exhaustive and rep.ok


def test_consensus_non_vacuous():
    # every judge rational and certain of a: the pool must be too
    x = agenda_from_texts(["a", "b"], ["a", "b"])
    js = [Judgment.from_values(x, {"a": 1, "b": "0.2"}), Judgment.from_values(x, {"a": 1, "b": "0.7"})]
    p = Profile(x, js)
    rep = check_consensus_compatibility(linear_rule(Weights.parse(["0.3", "0.7"])), p)
    assert rep.applicable > 1 and rep.ok


def test_constant_rule_caught():
    x = agenda_from_texts(["a"], ["a"])
    p = Profile(x, [Judgment.from_values(x, {"a": 1})] * 2)

    def constant(_p):
        return Judgment.from_values(x, {"a": "1/2"})

    rep = check_consensus_compatibility(constant, p, candidates=[x.parse("a")])
    assert [f.text for f in rep.violations] == ["a"]
    assert check_consensus_compatibility(constant, p, candidates=[x.lang.contradiction()]).ok


def test_independence_linear(profile):
    rng = random.Random(9)
    pairs = [profile_pair(profile.agenda, 3, rng)[:2] for _ in range(20)]
    assert check_independence(linear_rule(Weights.equal(3)), pairs).ok


def test_cross_formula_rule_caught():
    x = agenda_from_texts(["a", "b"], ["a", "b"])
    a, b = x.parse("a"), x.parse("b")

    def swap(p):
        return Judgment.from_values(x, {"a": p[0][b], "b": p[0][a]})

    p = Profile(x, [Judgment.from_values(x, {"a": "0.5", "b": "0.2"})])
    q = Profile(x, [Judgment.from_values(x, {"a": "0.5", "b": "0.6"})])
    rep = check_independence(swap, [(p, q)])
    assert not rep.ok
    assert {v.formula.text for v in rep.violations} == {"a", "!a"}


def test_independence_pair_mismatch(profile):
    other = Profile(agenda_from_texts(["a"], ["a"]), [Judgment.from_values(agenda_from_texts(["a"], ["a"]), {"a": 1})])
    with pytest.raises(PoolingError):
        check_independence(linear_rule(Weights.equal(3)), [(profile, other)])
