"""Reference polynomials and values, stored as {degree: (a, b)} for a + b*alpha_k.

Nothing in here is computed; the generator in :mod:`kunion.paperpoly` is
checked against these tables.
"""

from fractions import Fraction as F

TABLE2 = {
    2: {0: (2, -4), 1: (3, 0), 2: (0, -4), 3: (-1, 0)},
    3: {0: (-3, 9), 1: (-6, 0), 2: (-10, 0), 3: (-6, 63), 4: (-3, 0), 5: (2, 0),
        6: (0, 9), 8: (-1, 0)},
    4: {0: (4, -16), 1: (10, 0), 2: (20, 0), 3: (35, 0), 4: (40, -496), 5: (44, 0),
        6: (40, 0), 7: (25, 0), 8: (20, -496), 9: (10, 0), 10: (4, 0), 11: (5, 0),
        12: (0, -16), 15: (-1, 0)},
    5: {0: (-5, 25), 1: (-15, 0), 2: (-35, 0), 3: (-70, 0), 4: (-126, 0),
        5: (-185, 3025), 6: (-255, 0), 7: (-320, 0), 8: (-365, 0), 9: (-371, 0),
        10: (-365, 9525), 11: (-320, 0), 12: (-255, 0), 13: (-185, 0), 14: (-131, 0),
        15: (-70, 3025), 16: (-35, 0), 17: (-15, 0), 18: (-5, 0), 19: (4, 0),
        20: (0, 25), 24: (-1, 0)},
    6: {0: (6, -36), 1: (21, 0), 2: (56, 0), 3: (126, 0), 4: (252, 0), 5: (462, 0),
        6: (756, -16416), 7: (1161, 0), 8: (1666, 0), 9: (2247, 0), 10: (2856, 0),
        11: (3416, 0), 12: (3906, -123516), 13: (4221, 0), 14: (4332, 0),
        15: (4221, 0), 16: (3906, 0), 17: (3451, 0), 18: (2856, -123516),
        19: (2247, 0), 20: (1666, 0), 21: (1161, 0), 22: (756, 0), 23: (441, 0),
        24: (252, -16416), 25: (126, 0), 26: (56, 0), 27: (21, 0), 28: (6, 0),
        29: (7, 0), 30: (0, -36), 35: (-1, 0)},
}

# derivatives of p_4, keyed by derivative order
P4_DERIVATIVES = {
    1: {0: (10, 0), 1: (40, 0), 2: (105, 0), 3: (4 * 40, 4 * -496), 4: (220, 0), 5: (240, 0),
        6: (175, 0), 7: (8 * 20, 8 * -496), 8: (90, 0), 9: (40, 0), 10: (55, 0),
        11: (0, -192), 14: (-15, 0)},
    2: {0: (40, 0), 1: (210, 0), 2: (12 * 40, 12 * -496), 3: (880, 0), 4: (1200, 0),
        5: (1050, 0), 6: (56 * 20, 56 * -496), 7: (720, 0), 8: (360, 0), 9: (550, 0),
        10: (0, -2112), 13: (-210, 0)},
    4: {0: (960, -11904), 1: (5280, 0), 2: (14400, 0), 3: (21000, 0),
        4: (1680 * 20, 1680 * -496), 5: (30240, 0), 6: (20160, 0), 7: (39600, 0),
        8: (0, -190080), 11: (-32760, 0)},
    5: {0: (5280, 0), 1: (28800, 0), 2: (63000, 0), 3: (6720 * 20, 6720 * -496),
        4: (151200, 0), 5: (120960, 0), 6: (277200, 0), 7: (0, -1520640),
        10: (-360360, 0)},
    6: {0: (28800, 0), 1: (126000, 0), 2: (20160 * 20, 20160 * -496), 3: (604800, 0),
        4: (604800, 0), 5: (1663200, 0), 6: (0, -10644480), 9: (-3603600, 0)},
    8: {0: (806400, -19998720), 1: (3628800, 0), 2: (7257600, 0), 3: (33264000, 0),
        4: (0, -319334400), 7: (-259459200, 0)},
    9: {0: (3628800, 0), 1: (14515200, 0), 2: (99792000, 0), 3: (0, -1277337600),
        6: (-1816214400, 0)},
    10: {0: (14515200, 0), 1: (199584000, 0), 2: (0, -3832012800),
         5: (-10897286400, 0)},
    12: {0: (0, -7664025600), 3: (-217945728000, 0)},
}

# third and fourth derivatives of p_3 used for the k = 3 argument
P3_DERIVATIVES = {
    3: {0: (-36, 378), 1: (-72, 0), 2: (120, 0), 3: (0, 1080), 5: (-336, 0)},
    4: {0: (-72, 0), 1: (240, 0), 2: (0, 3240), 4: (-1680, 0)},
}

# (claim id, k, derivative order, x, (a, b) of the stated value, relation, bound)
SIGN_EVALUATIONS = [
    ("prop-3.12-p3-at-1", 3, 0, F(1), (F(-27), F(81)), ">", 0),
    ("prop-3.12-p3-d4-at-m0.9", 3, 4, F(-9, 10),
     (F(-9 * 19309, 125), F(9 * 36450, 125)), "<", 0),
    ("prop-3.12-p3-d4-at-m0.8", 3, 4, F(-8, 10),
     (F(-216 * 551, 125), F(216 * 1200, 125)), ">", 0),
    ("prop-3.12-p3-d4-at-0", 3, 4, F(0), (F(-72), F(0)), "<", 0),
    ("prop-3.12-p3-d4-at-0.5", 3, 4, F(1, 2), (F(-57), F(810)), ">", 0),
    ("prop-3.12-p3-d3-at-0", 3, 3, F(0), (F(-36), F(378)), ">", 100),
    ("prop-3.12-p3-d3-at-m0.9", 3, 3, F(-9, 10),
     (F(9 * 225281, 6250), F(-9 * 284250, 6250)), ">", 133),
    ("appendix-a-p4-d10-at-m0.2", 4, 10, F(-1, 5),
     (F(-2739308544, 125), F(-153280512)), "<", 0),
    ("appendix-a-p4-d10-at-0", 4, 10, F(0), (F(14515200), F(0)), ">", 0),
    ("appendix-a-p4-d9-at-0", 4, 9, F(0), (F(3628800), F(0)), ">", 0),
    ("appendix-a-p4-d9-at-0.4", 4, 9, F(2, 5),
     (F(11226491136, 625), F(-408748032, 5)), "<", 0),
    ("appendix-a-p4-d8-at-0", 4, 8, F(0), (F(806400), F(-19998720)), "<", -6000000),
    ("appendix-a-p4-d6-at-m0.15", 4, 6, F(-3, 20),
     (F(21901848684147, 1280000000), F(-2813835591, 12500)), "<", 0),
    ("appendix-a-p4-d6-at-0", 4, 6, F(0), (F(28800), F(0)), ">", 0),
    ("appendix-a-p4-d5-at-0", 4, 5, F(0), (F(5280), F(0)), ">", 0),
    ("appendix-a-p4-d5-at-0.25", 4, 5, F(1, 4),
     (F(2528848395, 131072), F(-834765, 16)), "<", 0),
    ("appendix-a-p4-d4-at-0", 4, 4, F(0), (F(960), F(-11904)), "<", -3565),
    ("appendix-a-p4-d2-at-m0.2", 4, 2, F(-1, 5),
     (F(2882593792, 244140625), F(-2342362112, 9765625)), "<", 0),
    ("appendix-a-p4-d2-at-0", 4, 2, F(0), (F(40), F(0)), ">", 0),
    ("appendix-a-p4-d1-at-0", 4, 1, F(0), (F(10), F(0)), ">", 0),
]

# Bounds on the variation of a derivative across a bracket, written out as
# plain rational arithmetic: (claim id, expression text, value, relation, bound).
RATIONAL_BOUNDS = [
    ("prop-3.12-p3-d3-variation-m0.9",
     "-72(1/10) + 120(16/25 - 81/100) - 336(-1024/3125 + 59049/100000)",
     -72 * F(1, 10) + 120 * (F(16, 25) - F(81, 100)) - 336 * (F(-1024, 3125) + F(59049, 100000)),
     "==", F(-724401, 6250)),
    ("appendix-a-p4-d9-variation",
     "14515200(-1/5) - 1816214400(1/5^6)",
     14515200 * F(-1, 5) - 1816214400 * F(1, 5**6), ">", -3628800),
    ("appendix-a-p4-d8-variation",
     "3628800(2/5) + 7257600(4/25) + 33264000(8/125)",
     3628800 * F(2, 5) + 7257600 * F(4, 25) + 33264000 * F(8, 125), "<", 5000000),
    ("appendix-a-p4-d5-variation",
     "28800(-3/20) + 120960(-3/20)^5 - 360360(-3/20)^10",
     28800 * F(-3, 20) + 120960 * F(-3, 20) ** 5 - 360360 * F(-3, 20) ** 10, ">", -4400),
    ("appendix-a-p4-d4-variation",
     "5280/4 + 14400/4^2 + 21000/4^3 + 30240/4^5 + 20160/4^6 + 39600/4^7",
     sum(c * F(1, 4) ** e for c, e in
         [(5280, 1), (14400, 2), (21000, 3), (30240, 5), (20160, 6), (39600, 7)]),
     "<", 2600),
    ("appendix-a-p4-d1-variation",
     "40(-1/5) + 240(-1/5)^5 + 40(-1/5)^9 - 15(-1/5)^14",
     40 * F(-1, 5) + 240 * F(-1, 5) ** 5 + 40 * F(-1, 5) ** 9 - 15 * F(-1, 5) ** 14,
     ">", -9),
]

# The quantities those variation bounds are used for: a derivative keeps a
# strict bound on a closed bracket.  (claim id, k, order, lo, hi, relation, bound)
BRACKET_BOUNDS = [
    ("prop-3.12-p3-d3-on-0-0.5", 3, 3, F(0), F(1, 2), ">", 50),
    ("prop-3.12-p3-d3-on-m0.9-m0.8", 3, 3, F(-9, 10), F(-4, 5), ">", 133 - 116),
    ("appendix-a-p4-d9-on-m0.2-0", 4, 9, F(-1, 5), F(0), ">", 0),
    ("appendix-a-p4-d8-on-0-0.4", 4, 8, F(0), F(2, 5), "<", -6000000 + 5000000),
    ("appendix-a-p4-d5-on-m0.15-0", 4, 5, F(-3, 20), F(0), ">", 5280 - 4400),
    ("appendix-a-p4-d4-on-0-0.25", 4, 4, F(0), F(1, 4), "<", -3565 + 2600),
    ("appendix-a-p4-d1-on-m0.2-0", 4, 1, F(-1, 5), F(0), ">", 10 - 9),
]

INF = float("inf")

# Root brackets: (claim id, k, order, [(lo, hi), ...], total)
ROOT_BRACKETS = [
    ("prop-3.12-p3-d4-roots", 3, 4,
     [(F(-9, 10), F(-4, 5)), (F(-4, 5), F(0)), (F(0), F(1, 2)), (F(1, 2), INF)], 4),
    ("appendix-a-p4-d12-roots", 4, 12, [], 1),
    ("appendix-a-p4-d10-roots", 4, 10, [(-INF, F(-1, 5)), (F(-1, 5), F(0)), (F(0), INF)], 3),
    ("appendix-a-p4-d9-roots", 4, 9, [(-INF, F(0)), (F(0), F(2, 5))], 2),
    ("appendix-a-p4-d8-roots", 4, 8, [], 1),
    ("appendix-a-p4-d6-roots", 4, 6, [(-INF, F(-3, 20)), (F(-3, 20), F(0)), (F(0), INF)], 3),
    ("appendix-a-p4-d5-roots", 4, 5, [(-INF, F(0)), (F(0), F(1, 4))], 2),
    ("appendix-a-p4-d4-roots", 4, 4, [], 1),
    ("appendix-a-p4-d2-roots", 4, 2, [(-INF, F(-1, 5)), (F(-1, 5), F(0)), (F(0), INF)], 3),
    ("appendix-a-p4-d1-roots", 4, 1, [], 2),
]

P4_ROOT_PATTERN = (3, 2, 3, 2, 1, 2, 3, 2, 1, 2, 3, 2, 1, 2, 1)
P4_DISCRIMINANT_SIGNS = (1, 1, -1, -1, -1, 1, -1, -1, -1, 1, -1, -1, -1, 0, 1)

# constants table: k -> (phi_k, psi_k, z_k, alpha_k), four decimals as printed
TABLE1 = {
    2: ("0.6180", "0.3819", "0.3819", "0.6180"),
    3: ("0.6823", "0.3176", "0.3176", "0.4655"),
    4: ("0.7244", "0.2755", "0.2755", "0.3802"),
    5: ("0.7548", "0.2451", "0.2416", "0.3247"),
    6: ("0.7780", "0.2219", "0.2183", "0.2851"),
    7: ("0.7965", "0.2034", "0.2006", "0.2554"),
    8: ("0.8116", "0.1883", "0.1863", "0.2319"),
    16: ("0.8771", "0.1228", "0.1204", "0.1400"),
}
TABLE1_COLUMNS = ("phi", "psi", "z", "alpha")
TABLE1_TOL = F(1, 10**4)
