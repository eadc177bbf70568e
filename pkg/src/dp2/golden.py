"""Reference data for the two diagonal surface cases.

Everything here is an independent transcription of the published tables for
this surface family; nothing in this file is computed by the package.  The
`galois --diff` command and the acceptance suite compare computed output
against these values cell by cell, so the transcription is audited in exactly
one place.

Matrix convention: column j is the coordinate vector of the image of basis
vector v_{j+1}.  Action-table cells are (zeta-power shift of delta, sign flip)
for the three line families and i-power shifts of (alpha, beta, gamma) for the
32 remaining curves.
"""

SQUARE_D_IOTA_A = [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, -1, -1],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1, -1, -1],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [-1, 0, 0, 0, 0, -1, 0, -1],
    [1, 0, 0, 0, 0, 1, 1, 2],
]

SQUARE_D_IOTA_B = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, -1, 0, 0, -1, -1],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, -1, 0, -1, -1],
    [0, 0, 0, -1, -1, 0, 0, -1],
    [0, 0, 0, 1, 1, 0, 1, 2],
]

NONSQUARE_IOTA_A = [
    [-2, -1, -1, -1, -1, -1, -1, -3],
    [-1, -2, -1, -1, -1, -1, -1, -3],
    [-1, -1, -1, -2, -1, -1, -1, -3],
    [-1, -1, 0, -1, -1, -1, 0, -2],
    [-1, -1, -1, -1, -1, 0, 0, -2],
    [-1, -1, -1, -1, -2, -1, -1, -3],
    [-1, -1, 0, -1, -1, 0, -1, -2],
    [3, 3, 2, 3, 3, 2, 2, 7],
]

NONSQUARE_IOTA_B = [
    [-1, 0, -1, -1, -1, -1, 0, -2],
    [-2, -1, -1, -1, -1, -1, -1, -3],
    [-1, -1, -2, -1, -1, -1, -1, -3],
    [-1, -1, -1, -2, -1, -1, -1, -3],
    [-1, -1, -1, -1, -1, -2, -1, -3],
    [-1, -1, -1, -1, 0, -1, 0, -2],
    [-1, 0, -1, -1, 0, -1, -1, -2],
    [3, 2, 3, 3, 2, 3, 2, 7],
]

NONSQUARE_IOTA_C = [
    [-1, -2, -1, -1, -1, -1, -1, -3],
    [0, -1, -1, -1, -1, -1, 0, -2],
    [-1, -1, -1, 0, -1, -1, 0, -2],
    [-1, -1, -2, -1, -1, -1, -1, -3],
    [-1, -1, -1, -1, -2, -1, -1, -3],
    [-1, -1, -1, -1, -1, -2, -1, -3],
    [0, -1, -1, 0, -1, -1, -1, -2],
    [2, 3, 3, 2, 3, 3, 2, 7],
]

GOLDEN_MATRICES = {
    "square-d": {"iota_a": SQUARE_D_IOTA_A, "iota_b": SQUARE_D_IOTA_B},
    "nonsquare": {
        "iota_a": NONSQUARE_IOTA_A,
        "iota_b": NONSQUARE_IOTA_B,
        "iota_c": NONSQUARE_IOTA_C,
    },
}

# Action tables.  Family rows: delta -> zeta^shift * delta, with or without a
# sign flip of the w-branch.  Triple row: componentwise i-power shifts.
GOLDEN_TABLES = {
    "square-d": {
        "iota_a": {"t": (2, True), "u": (6, True), "v": (0, False), "triple": (1, 0, 1)},
        "iota_b": {"t": (6, True), "u": (0, False), "v": (2, True), "triple": (0, 1, 1)},
        "iota_sd": {"t": (0, False), "u": (4, False), "v": (4, False), "triple": (0, 0, 2)},
    },
    "nonsquare": {
        "iota_a": {"t": (2, False), "u": (0, True), "v": (6, False), "triple": (1, 0, 0)},
        "iota_b": {"t": (6, False), "u": (2, False), "v": (0, True), "triple": (0, 1, 0)},
        "iota_c": {"t": (0, True), "u": (6, False), "v": (2, False), "triple": (0, 0, 1)},
    },
}

# Distinguished classes in the v1..v8 basis.
MU = (0, 0, 0, 0, 0, 0, -1, 1)
KAPPA = (-1, -1, -1, -1, -1, -1, -1, 3)

# Rational generating sets of the per-generator invariant subspaces in the
# square-discriminant case, doubled so the entries are integers.
SQUARE_D_INVARIANTS_A_DOUBLED = [
    (0, 0, 2, 0, 0, 0, 0, 0),
    (0, 0, 0, 2, 0, 0, 0, 0),
    (-1, -1, 0, 0, -1, -1, 2, 0),
    (-1, -1, 0, 0, -1, -1, 0, 2),
]

SQUARE_D_INVARIANTS_B_DOUBLED = [
    (2, 0, 0, 0, 0, 0, 0, 0),
    (0, 2, 0, 0, 0, 0, 0, 0),
    (0, 0, -1, -1, -1, -1, 2, 0),
    (0, 0, -1, -1, -1, -1, 0, 2),
]

SQUARE_D_INTERSECTION_DOUBLED = [
    (-1, -1, -1, -1, -1, -1, 2, 0),
    (-1, -1, -1, -1, -1, -1, 0, 2),
]

# The four u-lines whose class sum is 2*mu.
ORBIT_OF_U_LINE = ("l(u,z^1,+)", "l(u,z^3,-)", "l(u,z^5,+)", "l(u,z^7,-)")
