"""Transcriptions of the worked examples used as fixed expectations."""

from fractions import Fraction as F

# Gr(2,4): prod(alpha) * det(phi), one entry per spanning tree of K4:
# (alpha indices, gamma indices).
GR24_TERMS = [
    ("23 24 34", "12 13 14"), ("13 24 34", "12 14 23"), ("12 24 34", "13 14 23"),
    ("14 23 34", "12 13 24"), ("12 23 34", "13 14 24"), ("13 14 34", "12 23 24"),
    ("12 14 34", "13 23 24"), ("12 13 34", "14 23 24"), ("14 23 24", "12 13 34"),
    ("13 23 24", "12 14 34"), ("13 14 24", "12 23 34"), ("12 14 24", "13 23 34"),
    ("12 13 24", "14 23 34"), ("13 14 23", "12 24 34"), ("12 14 23", "13 24 34"),
    ("12 13 23", "14 24 34"),
]

# The Hadamard quadric for Gr(2,4) x Gr(2,4): same terms with an x-monomial.
GR24_HADAMARD_X = [
    "1 1", "1 2", "1 3", "1 2", "1 4", "2 2", "2 3", "2 4",
    "1 3", "1 4", "2 3", "3 3", "3 4", "2 4", "3 4", "4 4",
]

# Rank-3 matroid on 5 elements with circuits {124, 135, 2345}.
N5_ROWS = [[1, 0, 0, 1, 1], [0, 1, 0, 1, 0], [0, 0, 1, 0, 1]]
N5_CIRCUITS = {(1, 2, 4), (1, 3, 5), (2, 3, 4, 5)}
N5_BROKEN = {(1, 2), (1, 3), (2, 3, 4)}
N5_FACETS = ((1, 4, 5), (2, 3, 5), (2, 4, 5), (3, 4, 5))
N5_OTHER_BASES = {(1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 3, 4)}
# column I -> v_I in facet coordinates (145, 235, 245, 345)
N5_V_TABLE = {
    (1, 4, 5): (1, 0, 0, 0), (2, 3, 5): (0, 1, 0, 0), (2, 4, 5): (0, 0, 1, 0),
    (3, 4, 5): (0, 0, 0, 1), (1, 2, 3): (1, 1, -1, 0), (1, 2, 5): (1, 0, -1, 0),
    (1, 3, 4): (-1, 0, 0, 1), (2, 3, 4): (0, 1, -1, 1),
}


def _e(*pairs):
    return {k: F(v) for k, v in pairs}


# phi in beta variables: entry -> {"b_J/a_I": coefficient}
N5_PHI = [
    [_e(("b_45/a_123", 1), ("b_34/a_125", 1), ("b_25/a_134", 1), ("b_23/a_145", 1)),
     _e(("b_45/a_123", 1)),
     _e(("b_45/a_123", -1), ("b_34/a_125", -1)),
     _e(("b_25/a_134", -1))],
    [_e(("b_45/a_123", 1)),
     _e(("b_45/a_123", 1), ("b_15/a_234", -1), ("b_14/a_235", 1)),
     _e(("b_45/a_123", -1), ("b_15/a_234", 1)),
     _e(("b_15/a_234", -1))],
    [_e(("b_45/a_123", -1), ("b_34/a_125", -1)),
     _e(("b_45/a_123", -1), ("b_15/a_234", 1)),
     _e(("b_45/a_123", 1), ("b_34/a_125", 1), ("b_15/a_234", -1), ("b_13/a_245", -1)),
     _e(("b_15/a_234", 1))],
    [_e(("b_25/a_134", -1)),
     _e(("b_15/a_234", -1)),
     _e(("b_15/a_234", 1)),
     _e(("b_25/a_134", 1), ("b_15/a_234", -1), ("b_12/a_345", 1))],
]

# Triangulation of the real projective plane inside K_6^2.
RP2_FOREST = [(1, 2, 3), (1, 2, 4), (1, 3, 6), (1, 4, 5), (1, 5, 6),
              (2, 3, 5), (2, 4, 6), (2, 5, 6), (3, 4, 5), (3, 4, 6)]

# Entropic example on Gr(2,4).
EX65_ROWS = [[1, 1, 1, 1], [0, 1, 2, 3]]
EX65_PERP = [[-1, 2, -1, 0], [0, -1, 2, -1]]
EX65_GRAM = [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]]
EX65_Q = [[1, 1, -1], [1, -1, 1], [-1, 1, 1]]
# H entries as {(e1, e2): coefficient of y1^e1 y2^e2}
EX65_H = [
    [{(0, 0): F(3)}, {(1, 0): F(5, 2), (0, 1): F(23, 6)}, {(1, 0): F(5, 2), (0, 1): F(11, 3)}],
    [None, {(2, 0): F(15, 4), (1, 1): F(40, 3), (0, 2): F(583, 36)},
     {(2, 0): F(5, 2), (1, 1): F(15, 2), (0, 2): F(317, 36)}],
    [None, None, {(2, 0): F(15, 4), (1, 1): F(55, 6), (0, 2): F(179, 18)}],
]
EX65_DET_SCALE = F(25, 144)
EX65_DET = {(4, 0): 45, (3, 1): 270, (2, 2): 763, (1, 3): 1074, (0, 4): 773}
# A_3 and A_4 times 12, as (coefficient of y1, coefficient of y2) per upper entry
EX65_A3_TIMES_12 = {(0, 0): (3, -1), (0, 1): (-6, -4), (0, 2): (3, -3),
                    (1, 1): (12, 20), (1, 2): (-6, -24), (2, 2): (15, 27)}
EX65_A4_TIMES_12 = {(0, 0): (3, 10), (0, 1): (-6, -14), (0, 2): (-3, -12),
                    (1, 1): (12, 16), (1, 2): (6, -6), (2, 2): (15, 18)}
