"""Published reference values used as test oracles."""
from __future__ import annotations

from fractions import Fraction

CP2_N0 = {1: 1, 2: 1, 3: 12, 4: 620, 5: 87304, 6: 26312976, 7: 14616808192, 8: 13525751027392}
CP2_N1 = {1: 0, 2: 0, 3: 1, 4: 225, 5: 87192, 6: 57435240, 7: 60478511040, 8: 96212546526096}

# n, a, b, N0_ab, N1_ab, N1 + (2n-1)N0/12
_CP3 = """
1 0 2 1 -1/12 0
1 2 1 1 -1/12 0
1 4 0 2 -1/6 0
2 0 4 0 0 0
2 2 3 1 -1/4 0
2 4 2 4 -1 0
2 6 1 18 -9/2 0
2 8 0 92 -23 0
3 0 6 1 -5/12 0
3 2 5 5 -25/12 0
3 4 4 30 -25/2 0
3 6 3 190 -469/6 1
3 8 2 1312 -1598/3 14
3 10 1 9864 -3960 150
3 12 0 80160 -31900 1500
4 0 8 4 -4/3 1
4 2 7 58 -179/6 4
4 4 6 480 -248 32
4 6 5 4000 -6070/3 310
4 8 4 35104 -51772/3 3220
4 10 3 327888 -156594 34674
4 12 2 3259680 -1515824 385656
4 14 1 34382544 -15620216 4436268
4 16 0 383306880 -170763640 52832040
5 0 10 105 -147/4 42
5 2 9 1265 -2379/4 354
5 4 8 13354 -13047/2 3492
5 6 7 139098 -132549/2 38049
5 8 6 1492616 -677808 441654
5 10 5 16744080 -7179606 5378454
5 12 4 197240400 -79637976 68292324
5 14 3 2440235712 -928521900 901654884
5 16 2 31658432256 -11385660384 12358163808
5 18 1 429750191232 -146713008096 175599635328
5 20 0 6089786376960 -1984020394752 2583319387968
"""

CP3_N0 = {}
CP3_N1 = {}
CP3_COUNT = {}
for _line in _CP3.strip().splitlines():
    _n, _a, _b, _x, _y, _z = _line.split()
    _k = (int(_a), int(_b))
    CP3_N0[_k] = Fraction(_x)
    CP3_N1[_k] = Fraction(_y)
    CP3_COUNT[_k] = Fraction(_z)

SEVERI_WORKED = {
    "N0(5,4)": 36855,
    "N(5,4)": 36975,
    "N0(5,5)": 87192,
    "N(5,5)": 90027,
    "N0(6,9)": 57435240,
    "N(6,9)": 63338881,
}

STRATA_MATRIX = [
    ["1/8", 0, 0, 0, -3, 0, "3/2", 0, "3/2"],
    [0, 0, 0, 0, 0, -6, 6, 6, 0],
    [0, 0, 0, "-1/2", 0, 6, -3, 0, 0],
    [0, 0, "-1/2", "1/6", 6, -2, 0, 0, 0],
    [-3, 0, 0, 6, 0, 0, 0, 0, 0],
    [0, -6, 6, -2, 0, 0, 0, 0, 0],
    ["3/2", 6, -3, 0, 0, 0, 0, 0, 0],
]
STRATA_MATRIX = [[Fraction(v) for v in row] for row in STRATA_MATRIX]
RELATION_TRIVIAL = (0, 0, 0, 0, 1, 3, 6, -3, -4)
RELATION_NEW = (12, -4, -2, 6, 0, 1, 1, 0, -2)
COMPLETION = {"aa": 16, "ab": -12, "bb": 9}

# coefficient of s1^4 x in F(delta, CP^1); every other class vanishes
CP1_STRATA = {"d34": Fraction(-1, 144), "d04": Fraction(1, 24), "dalpha": Fraction(2, 24)}
