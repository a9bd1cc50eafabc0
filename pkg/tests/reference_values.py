"""Frozen expected values shared by the unit and acceptance tests."""

D3, D6, D5 = "D3", "D6", "D5"

# reduced 3-torsion quotient of CT(n): vertex labels; absent ids carry no 3-torsion
CT_REDUCED_3 = {
    1: [D3], 2: [D3], 3: [D3], 4: [], 5: [], 6: [],
    7: [D6, D3], 8: [D3, D3], 9: [D3, D3, D3], 10: [D6, D3], 11: [D6, D3],
    12: [D3] * 6, 13: [D6, D3, D3, D3], 14: [D6, D6, D3], 15: [D6, D3, D3],
    16: [D3, D3, D3], 17: [D6, D6, D3, D3], 18: [D3, D3],
    19: [D3], 20: [D3], 21: [D3, D3], 22: [D3, D3], 23: [D3], 24: [D3], 25: [D3],
    26: [D3, D3], 27: [D3, D3, D3], 28: [D6, D3], 29: [D6, D3, D3], 30: [D6, D3, D3],
    31: [D3], 32: [D6, D3],
}

CT_REDUCED_5 = {i: [] for i in range(1, 33)}
CT_REDUCED_5.update({i: [D5] for i in (19, 20, 22, 23, 26, 27, 28, 29)})
CT_REDUCED_5.update({21: [D5, D5], 24: [D5, D5]})

AMBIGUOUS_3 = {210, 262, 273, 298, 345, 426, 430, 462, 481, 615,
               1155, 1159, 1195, 1339, 1351, 1407, 1515, 1807}
OVERRIDES_3 = {102, 133, 165, 259, 559, 595, 763, 835, 1435}
AMBIGUOUS_2 = {205, 221, 254, 273, 305, 321, 322, 326, 345, 377, 381, 385, 386, 410,
               438, 465, 469, 473, 482, 1067, 1139, 1211, 1339, 1443, 1763, 1771, 1947}
OVERRIDES_2 = {34, 105, 141, 142, 194, 235, 323, 427, 899, 979, 1243, 1507}
