"""Integer homology of finite chain complexes via Smith reduction.

Matrices are lists of rows of Python ints, so everything is exact.  The
complexes fed through here are small (hundreds of cells), which keeps the
classical elementary-operation Smith algorithm comfortable.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors d1 | d2 | ... of an integer matrix."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    divisors: list[int] = []
    top = 0
    while True:
        pivot = None
        for i in range(top, rows):
            for j in range(top, cols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        while True:
            dirty = False
            for i in range(top + 1, rows):
                q = a[i][top] // a[top][top]
                if q:
                    for j in range(top, cols):
                        a[i][j] -= q * a[top][j]
                if a[i][top]:
                    a[top], a[i] = a[i], a[top]
                    dirty = True
            for j in range(top + 1, cols):
                q = a[top][j] // a[top][top]
                if q:
                    for i in range(top, rows):
                        a[i][j] -= q * a[i][top]
                if a[top][j]:
                    for i in range(top, rows):
                        a[i][top], a[i][j] = a[i][j], a[i][top]
                    dirty = True
            if not dirty:
                break
        # pivot must divide the rest of the block for true Smith form
        p = abs(a[top][top])
        offender = None
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, cols):
                a[top][j] += a[offender][j]
            continue
        divisors.append(p)
        top += 1
        if top >= rows or top >= cols:
            break
    return divisors


def homology_from_boundaries(dims: Sequence[int],
                             boundaries: Sequence[Sequence[Sequence[int]]]
                             ) -> list[tuple[int, tuple[int, ...]]]:
    """Homology of a chain complex given cell counts and boundary matrices.

    ``dims[d]`` counts d-cells; ``boundaries[d]`` is the matrix of the map
    from d-cells to (d-1)-cells (absent or empty for d = 0).  Returns one
    (free rank, torsion coefficients) pair per dimension.
    """
    top = len(dims) - 1
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for d in range(top + 1):
        mat = boundaries[d] if d < len(boundaries) else []
        if d == 0 or not mat or not dims[d]:
            ranks[d] = 0
            torsion[d] = ()
        else:
            divs = smith_diagonal(mat)
            ranks[d] = len(divs)
            torsion[d] = tuple(x for x in divs if x > 1)
    out = []
    for d in range(top + 1):
        free = dims[d] - ranks[d] - ranks.get(d + 1, 0)
        out.append((free, torsion.get(d + 1, ())))
    return out
