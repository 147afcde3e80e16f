import itertools

import pytest

from adiabatic_gi import fixtures as fx
from adiabatic_gi.autgroup import (
    Permutation,
    check_dihedral,
    compose,
    decode_ground_strings,
    dihedral_relations,
    find_generators,
    generate_from,
    group_report,
    inverse,
    match_group,
    power,
    verify_closure,
)
from adiabatic_gi.cost import GIInstance, brute_force_ground
from adiabatic_gi.errors import ContractError, InputError

P = Permutation.parse


def table_perms(name):
    return [P(s) for s in fx.AUT_TABLES[name]["strings"]]


class TestPermutations:
    def test_parse_and_format(self):
        assert P("3012").images == (3, 0, 1, 2)
        assert str(P("3012")) == "3012"
        with pytest.raises(InputError):
            P("0012")

    def test_compose_convention(self):
        assert str(compose(P("3012"), P("0321"))) == "3210"
        assert str(compose(P("0321"), P("3012"))) == "1032"

    def test_power_and_inverse(self):
        a = P("3012")
        assert power(a, 4).is_identity()
        assert not power(a, 2).is_identity()
        assert compose(a, inverse(a)).is_identity()
        assert power(a, 0) == Permutation.identity(4)

    def test_associativity(self):
        perms = [Permutation(tuple(p)) for p in itertools.permutations(range(4))][::3]
        for p, q, r in itertools.product(perms, repeat=3):
            assert compose(compose(p, q), r) == compose(p, compose(q, r))


class TestClosure:
    @pytest.mark.parametrize("name", sorted(fx.AUT_TABLES))
    def test_published_sets_are_groups(self, name):
        assert verify_closure(table_perms(name))

    def test_missing_identity(self):
        res = verify_closure([P("1032")])
        assert not res and res.reason == "identity missing"

    def test_missing_inverse_has_witness(self):
        res = verify_closure([P("0123"), P("3012")])
        assert not res and res.reason == "inverse missing" and res.witness == (P("3012"),)

    def test_missing_product_has_witness(self):
        res = verify_closure([P("0123"), P("1023"), P("0132")])
        assert res.reason == "product missing" and len(res.witness) == 2


class TestDihedral:
    @pytest.mark.parametrize("name", ["c4", "c5", "c6", "c7", "w7"])
    def test_published_generators(self, name):
        t = fx.AUT_TABLES[name]
        a, b = P(t["alpha"]), P(t["beta"])
        assert all(dihedral_relations(a, b, t["n"]).values())
        table = generate_from(a, b, t["n"])
        assert table.order == 2 * t["n"] and not table.collapsed
        assert match_group(table_perms(name), table)

    def test_identity_beta_fails(self):
        a = P("3012")
        rel = dihedral_relations(a, Permutation.identity(4), 4)
        assert rel["alpha^n=e"] and rel["beta^2=e"]
        assert not rel["alpha.beta=beta.alpha^(n-1)"]
        assert not check_dihedral(a, Permutation.identity(4), 4)

    def test_grid_is_commutative(self):
        a, b = P("452301"), P("103254")
        assert compose(a, b) == compose(b, a)
        assert check_dihedral(a, b, 2)
        assert match_group(table_perms("grid23"), generate_from(a, b, 2))

    def test_collapse_detected(self):
        assert generate_from(P("1230"), P("1230"), 4).collapsed

    def test_find_generators_prefers_published_pair(self):
        for name in ("c4", "c6", "w7"):
            t = fx.AUT_TABLES[name]
            a, b, n = find_generators(table_perms(name), (P(t["alpha"]), P(t["beta"])))
            assert (str(a), str(b), n) == (t["alpha"], t["beta"], t["n"])

    def test_find_generators_without_preference(self):
        a, b, n = find_generators(table_perms("c5"))
        assert n == 5 and match_group(table_perms("c5"), generate_from(a, b, n))

    def test_non_dihedral(self):
        cyclic = [power(P("1230"), k) for k in range(4)]
        assert find_generators(cyclic) is None


class TestFromGroundStates:
    @pytest.mark.parametrize("name", ["c4", "c5", "c6", "grid23", "w7"])
    def test_ground_set_is_automorphism_group(self, name):
        t = fx.AUT_TABLES[name]
        decoded = decode_ground_strings(brute_force_ground(GIInstance(t["graph"], t["graph"])))
        assert set(decoded) == set(table_perms(name))
        assert verify_closure(decoded)

    def test_wheel_fixes_hub(self):
        rep = group_report(table_perms("w7"), (P("5012346"), P("1054326")))
        assert rep["fixed_vertices"] == [6]
        assert rep["order"] == 12 and rep["dihedral_n"] == 6 and rep["closed"]

    def test_positive_ground_cost_rejected(self):
        with pytest.raises(ContractError):
            decode_ground_strings(brute_force_ground(GIInstance(fx.FIG1_G, fx.FIG1_GP)))
