"""Reference data for the dihedral reflection quandles.

Independently tabulated matrices used by the reproduction suite and the
acceptance tests:

* the 9x9 permutation matrix of the operator of the transposition
  quandle in S3 (columns indexed by the source basis vector x tensor y,
  rows by the target, basis index 3x+y);

* the 16x16 permutation matrix of the operator of the square-reflection
  quandle, tabulated in the opposite orientation (rows indexed by the
  source basis vector) -- note the orientation difference between the
  two tables;

* the 16-parameter deformation pattern of the square-reflection
  operator: entry k at (row, col) means the perturbation added to the
  permutation matrix carries the parameter lambda_k there (same
  row-as-source orientation as the 16x16 table above);

* the dictionary matching this package's canonical entropic-orbit order
  to the lambda numbering of that pattern, computed once by matching
  orbit supports against the pattern and frozen here.
"""

from __future__ import annotations

# 9x9 operator of the transposition quandle of S3 (cols = source).
DIHEDRAL3_MATRIX = (
    (1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1),
)

# 16x16 operator of the square-reflection quandle (rows = source).
SQUARE_REFLECTION_MATRIX_ROWS_AS_SOURCE = (
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)

# Perturbation pattern of the 16-fold family (rows = source); entry k
# marks the position of lambda_k, 0 marks a structural zero.
SQUARE_REFLECTION_LAMBDA_PATTERN = (
    (1, 2, 0, 0, 3, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (3, 4, 0, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 5, 6, 0, 0, 7, 8, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 7, 8, 0, 0, 5, 6, 0, 0),
    (2, 1, 0, 0, 4, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (4, 3, 0, 0, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 6, 5, 0, 0, 8, 7, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 8, 7, 0, 0, 6, 5, 0, 0),
    (0, 0, 9, 10, 0, 0, 11, 12, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 11, 12, 0, 0, 9, 10, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 13, 14, 0, 0, 15, 16),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 15, 16, 0, 0, 13, 14),
    (0, 0, 10, 9, 0, 0, 12, 11, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 12, 11, 0, 0, 10, 9, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 14, 13, 0, 0, 16, 15),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 16, 15, 0, 0, 14, 13),
)

# ORBIT_TO_LAMBDA[k] = lambda id (1-based) of the k-th canonical orbit of
# the square-reflection quandle's degree-2 entropic basis.
ORBIT_TO_LAMBDA = (1, 3, 2, 4, 6, 8, 5, 7, 10, 12, 9, 11, 13, 15, 14, 16)


def ones_positions(grid) -> set[tuple[int, int]]:
    """(row, col) positions of the nonzero entries of a 0/1 grid."""
    return {(r, c) for r, row in enumerate(grid)
            for c, v in enumerate(row) if v}
