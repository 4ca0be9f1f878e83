import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzycpm import (
    build_network,
    crisp_forward_pass,
    fuzzy_forward_recursion,
    fuzzy_forward_with_provenance,
    oracle_cp_set,
)
from fuzzycpm.errors import ProvenanceCapExceeded

from conftest import networks, q

RECURSION_SET = "6/0.1, 7/0.2, 8/0.5, 9/0.5, 10/0.5, 11/0.1, 12/1"


class TestFigure1:
    def test_intermediates(self, figure1):
        s = fuzzy_forward_recursion(figure1)
        expected = {
            "es": {"a1": "0/1", "a2": "3/0.5, 5/1", "a3": "3/0.5, 5/1", "a4": RECURSION_SET},
            "ef": {"a1": "3/0.5, 5/1", "a2": "6/0.2, 8/0.5, 10/0.5, 12/1",
                   "a3": "5/0.1, 7/0.5, 9/1, 11/0.1", "a4": RECURSION_SET},
        }
        assert {a: str(v) for a, v in s.es.items()} == expected["es"]
        assert {a: str(v) for a, v in s.ef.items()} == expected["ef"]
        assert str(s.cp_set) == RECURSION_SET

    def test_provenance_examples(self, figure1):
        s = fuzzy_forward_with_provenance(figure1)
        assert (("a1", 3), ("a2", 5)) in s.point("a2", 8).witnesses
        assert (("a1", 5), ("a3", 4)) in s.point("a3", 9).witnesses
        # the finish's 9/0.5 cannot be realized by one configuration
        assert not s.point("a4", 9).realizable
        with pytest.raises(KeyError):
            s.point("a2", 7)

    def test_cap(self, figure1):
        with pytest.raises(ProvenanceCapExceeded):
            fuzzy_forward_with_provenance(figure1, cap=17)


def test_single_activity():
    m = q("2/0.3, 4/1")
    g = build_network([{"id": "x", "predecessors": [], "duration": m}])
    assert fuzzy_forward_recursion(g).cp_set == m


def test_chain_witnesses_one_per_combination():
    g = build_network([
        {"id": "a", "predecessors": [], "duration": "1/0.5, 2/1"},
        {"id": "b", "predecessors": ["a"], "duration": "1/1, 2/0.4"},
    ])
    s = fuzzy_forward_with_provenance(g)
    # ef(b) = 2/0.5, 3/1, 4/0.4; point 3 is reached by (1,2)@0.4 and (2,1)@1
    assert str(s.ef["b"]) == "2/0.5, 3/1, 4/0.4"
    assert s.point("b", 3).witnesses == ((("a", 2), ("b", 1)),)
    assert s.point("b", 4).witnesses == ((("a", 2), ("b", 2)),)
    for p in s.provenance["b"]:
        combos = [c for c in itertools.product(g.duration("a").points, g.duration("b").points)
                  if c[0][0] + c[1][0] == p.duration and min(c[0][1], c[1][1]) >= p.belief]
        assert len(p.witnesses) == len(combos)


@given(networks(max_activities=5))
@settings(max_examples=100, deadline=None)
def test_provenance_values_and_witnesses(g):
    plain = fuzzy_forward_recursion(g)
    prov = fuzzy_forward_with_provenance(g)
    assert prov.es == plain.es and prov.ef == plain.ef and prov.cp_set == plain.cp_set
    for a, points in prov.provenance.items():
        assert [(p.duration, p.belief) for p in points] == list(plain.ef[a].points)
        for p in points:
            for w in p.witnesses:
                t = dict(w)
                sub = build_network([
                    {"id": x, "predecessors": [y for y in g.predecessors[x] if y in t],
                     "duration": g.duration(x)}
                    for x in g.ids if x in t
                ])
                assert crisp_forward_pass(sub, t).ef[a] == p.duration
                assert min(g.duration(x).belief_of(d) for x, d in w) >= p.belief


@given(networks(max_activities=6, chain=True))
@settings(max_examples=200, deadline=None)
def test_series_exactness(g):
    assert fuzzy_forward_recursion(g).cp_set == oracle_cp_set(g)


@given(networks(max_activities=6), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_fold_order_independent(g, rnd):
    perm = {}
    for a in g.ids:
        p = list(g.predecessors[a])
        rnd.shuffle(p)
        perm[a] = p
    assert fuzzy_forward_recursion(g, perm) == fuzzy_forward_recursion(g)


@given(networks(max_activities=6))
@settings(max_examples=200, deadline=None)
def test_relaxation_dominance(g):
    rec = fuzzy_forward_recursion(g).cp_set.as_dict()
    orc = oracle_cp_set(g).as_dict()
    assert orc.keys() <= rec.keys()
    assert all(rec[k] >= b for k, b in orc.items())
