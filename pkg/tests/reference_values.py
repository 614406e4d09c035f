"""Matrices, vectors and pmfs from the worked examples."""

from fractions import Fraction as F

A3 = [[1, 1, 0], [0, 0, 1], [1, 0, 1], [0, 1, 1]]
A4 = [[1, 1, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
A5 = [
    [1, 1, 1, 0, 1, 1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
    [1, 1, 0, 1, 1, 0, 1, 0, 1, 0],
    [1, 0, 1, 1, 0, 1, 1, 0, 0, 1],
    [0, 1, 1, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
]
# columns follow A5's column order, each extended by one coordinate
A6_REFERENCE = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 0, 1, 1, 0, 1, 0, 1, 0],
    [1, 0, 1, 1, 0, 1, 1, 0, 0, 1],
    [0, 1, 1, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 0, 1, 1, 0, 1, 0, 0],
]

BASIS_D5 = [
    (0, 1, -1, 0, -1, 1, 0, 0, 0, 0),
    (0, 1, 0, -1, -1, 0, 1, 0, 0, 0),
    (1, 0, -1, 0, -1, 0, 0, 1, 0, 0),
    (1, 0, 0, -1, -1, 0, 0, 0, 1, 0),
    (1, 1, -1, -1, -1, 0, 0, 0, 0, 1),
]
COLUMNS_D5 = ["1100", "1010", "0110", "1110", "1001", "0101", "1101", "0011", "1011", "0111"]
COLUMNS_D6 = ["11100", "11010", "10110", "01110", "11001", "10101", "01101", "10011", "01011", "00111"]

P1_D5_TEXT = "z1*z3 - z2*z3 - z1*z4 + z2*z4"
F1_D5 = {"10100": F(1, 4), "10011": F(1, 4), "01101": F(1, 4), "01010": F(1, 4)}
P1_D6_TEXT = "z1*z2*z4 - z1*z3*z4 - z1*z2*z5 + z1*z3*z5"
F1_D6 = {"110100": F(1, 4), "010011": F(1, 4), "001101": F(1, 4), "101010": F(1, 4)}
PTILDE_D6_TEXT = "z1*z3*z5 - z2*z3*z5 - z1*z4*z5 + z2*z4*z5"
FTILDE_D6 = {"101010": F(1, 4), "100101": F(1, 4), "011001": F(1, 4), "010110": F(1, 4)}

# d = 3 pmfs in reverse-lexicographic order and their polynomials (constant, z1, z2, z1 z2)
F_D3 = {
    1: [F(3, 10), F(1, 10), F(1, 10), 0, F(1, 10), 0, 0, F(4, 10)],
    2: [F(1, 10), F(1, 10), F(1, 10), F(2, 10), F(3, 10), 0, 0, F(2, 10)],
    3: [0, F(1, 4), F(1, 4), 0, F(1, 4), 0, 0, F(1, 4)],
    4: [F(1, 4), 0, 0, F(1, 4), 0, F(1, 4), F(1, 4), 0],
}
P_D3 = {
    1: [F(-1, 10), F(1, 10), F(1, 10), F(-1, 10)],
    2: [F(-1, 10), F(1, 10), F(1, 10), F(-1, 10)],
    3: [F(-1, 4), F(1, 4), F(1, 4), F(-1, 4)],
    4: [F(1, 4), F(-1, 4), F(-1, 4), F(1, 4)],
}

MU3_PLUS = [(1, 2, 4), (1, 3, 5), (2, 5, 6), (3, 4, 6)]
MU3_MINUS = [(3, 5, 6), (2, 4, 6), (1, 3, 4), (1, 2, 5)]

COUNTEREXAMPLE_D5 = {"10001": F(1, 4), "00011": F(1, 4), "01110": F(1, 4), "11100": F(1, 4)}
