"""Named graph instances and published reference data.

Adjacency matrices are transcribed verbatim; every pair/self-instance used
in the test-suite and by ``--fixture`` on the command line lives here.
"""
from __future__ import annotations

from .graphs import Graph, from_adjacency, from_edge_list, make_cycle, make_path

# Figure 1: non-isomorphic pair, degree sequences {2,2,2,2} vs {3,2,2,1}.
FIG1_G = from_adjacency([
    [0, 1, 0, 1],
    [1, 0, 1, 0],
    [0, 1, 0, 1],
    [1, 0, 1, 0],
])
FIG1_GP = from_adjacency([
    [0, 0, 1, 1],
    [0, 0, 0, 1],
    [1, 0, 0, 1],
    [1, 1, 1, 0],
])

# Figure 2: isomorphic pair with exactly four isomorphisms.
FIG2_G = from_adjacency([
    [0, 1, 1, 1],
    [1, 0, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 1, 0],
])
FIG2_GP = from_adjacency([
    [0, 1, 1, 1],
    [1, 0, 0, 1],
    [1, 0, 0, 1],
    [1, 1, 1, 0],
])
FIG2_ISOMORPHISMS = ["0231", "3201", "3102", "0132"]
FIG2_SIGMA1 = [
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
]

# Figure 4: iso-spectral 5-vertex pair, P(x) = x^5 - 4x^3.
FIG4_G = from_adjacency([
    [0, 1, 0, 1, 0],
    [1, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [1, 0, 1, 0, 0],
    [0, 0, 0, 0, 0],
])
FIG4_GP = from_adjacency([
    [0, 1, 1, 1, 1],
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
])

# Figure 5: iso-spectral 6-vertex pair.
FIG5_G = from_adjacency([
    [0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 0],
])
FIG5_GP = from_adjacency([
    [0, 1, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 0],
    [0, 1, 0, 1, 1, 0],
    [0, 1, 1, 0, 1, 0],
    [0, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 1, 0],
])

# Figures 6-8: strongly regular pairs on 4, 5 and 6 vertices.
FIG6_G = make_cycle(4)
FIG6_GP = from_adjacency([
    [0, 1, 1, 1],
    [1, 0, 1, 1],
    [1, 1, 0, 1],
    [1, 1, 1, 0],
])
FIG7_G = from_adjacency([
    [0, 1, 0, 0, 1],
    [1, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1],
    [1, 0, 0, 1, 0],
])
FIG7_GP = from_adjacency([
    [0, 1, 1, 1, 1],
    [1, 0, 1, 1, 1],
    [1, 1, 0, 1, 1],
    [1, 1, 1, 0, 1],
    [1, 1, 1, 1, 0],
])
FIG8_G = from_adjacency([
    [0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0],
])
FIG8_GP = from_adjacency([
    [0, 1, 1, 1, 1, 0],
    [1, 0, 1, 0, 1, 1],
    [1, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 1],
    [1, 1, 0, 1, 0, 1],
    [0, 1, 1, 1, 1, 0],
])

# Automorphism instances (figures 9, 13-17).
C4 = from_adjacency([
    [0, 1, 0, 1],
    [1, 0, 1, 0],
    [0, 1, 0, 1],
    [1, 0, 1, 0],
])
C5 = from_adjacency([
    [0, 1, 0, 0, 1],
    [1, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1],
    [1, 0, 0, 1, 0],
])
C6 = from_adjacency([
    [0, 1, 0, 0, 0, 1],
    [1, 0, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, 1, 0],
])
C7 = from_adjacency([
    [0, 1, 0, 0, 0, 0, 1],
    [1, 0, 1, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, 0, 1, 0],
])
GRID_2_3 = from_adjacency([
    [0, 1, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 0],
    [1, 0, 0, 1, 1, 0],
    [0, 1, 1, 0, 0, 1],
    [0, 0, 1, 0, 0, 1],
    [0, 0, 0, 1, 1, 0],
])
W7 = from_adjacency([
    [0, 1, 0, 0, 0, 1, 1],
    [1, 0, 1, 0, 0, 0, 1],
    [0, 1, 0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 1, 0, 1, 1],
    [1, 0, 0, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 1, 0],
])

K2 = from_edge_list(2, [(0, 1)])
P3 = make_path(3)
MATCHING_4 = from_edge_list(4, [(0, 1), (2, 3)])

# Published ground sets and generator pairs for the automorphism tables.
AUT_TABLES = {
    "c4": {
        "graph": C4,
        "strings": ["3012", "2301", "1230", "0123", "0321", "3210", "2103", "1032"],
        "alpha": "3012", "beta": "0321", "n": 4, "kind": "dihedral",
    },
    "c5": {
        "graph": C5,
        "strings": ["40123", "34012", "23401", "12340", "01234",
                    "04321", "10432", "21043", "32104", "43210"],
        "alpha": "40123", "beta": "04321", "n": 5, "kind": "dihedral",
    },
    "c6": {
        "graph": C6,
        "strings": ["501234", "450123", "345012", "234501", "123450", "012345",
                    "105432", "210543", "321054", "432105", "543210", "054321"],
        "alpha": "501234", "beta": "105432", "n": 6, "kind": "dihedral",
    },
    "c7": {
        "graph": C7,
        "strings": ["6012345", "5601234", "4560123", "3456012", "2345601", "1234560",
                    "0123456", "0654321", "1065432", "2106543", "3210654", "4321065",
                    "5432106", "6543210"],
        "alpha": "6012345", "beta": "0654321", "n": 7, "kind": "dihedral",
    },
    "grid23": {
        "graph": GRID_2_3,
        "strings": ["452301", "103254", "012345", "543210"],
        "alpha": "452301", "beta": "103254", "n": 2, "kind": "abelian",
    },
    "w7": {
        "graph": W7,
        "strings": ["5012346", "4501236", "3450126", "2345016", "1234506", "0123456",
                    "1054326", "2105436", "3210546", "4321056", "5432106", "0543216"],
        "alpha": "5012346", "beta": "1054326", "n": 6, "kind": "dihedral",
    },
}

# GI pairs with their published ground energies (and degeneracies when given).
GI_PAIRS = {
    "fig1": {"g": FIG1_G, "gp": FIG1_GP, "min_cost": 4, "degeneracy": 16},
    "fig2": {"g": FIG2_G, "gp": FIG2_GP, "min_cost": 0, "degeneracy": 4},
    "fig4": {"g": FIG4_G, "gp": FIG4_GP, "min_cost": 5},
    "fig5": {"g": FIG5_G, "gp": FIG5_GP, "min_cost": 7},
    "fig6": {"g": FIG6_G, "gp": FIG6_GP, "min_cost": 4},
    "fig7": {"g": FIG7_G, "gp": FIG7_GP, "min_cost": 10},
    "fig8": {"g": FIG8_G, "gp": FIG8_GP, "min_cost": 10},
}

SINGLE_GRAPHS = {
    "c4": C4, "c5": C5, "c6": C6, "c7": C7,
    "grid23": GRID_2_3, "w7": W7, "k2": K2, "p3": P3, "matching4": MATCHING_4,
}

SGI_PAIRS = {
    "c4-p3": {"g": C4, "h": P3},
    "matching-p3": {"g": MATCHING_4, "h": P3},
}


def graph_fixture(name: str) -> Graph:
    try:
        return SINGLE_GRAPHS[name]
    except KeyError:
        raise KeyError(f"unknown graph fixture {name!r}; choose from {sorted(SINGLE_GRAPHS)}") from None

