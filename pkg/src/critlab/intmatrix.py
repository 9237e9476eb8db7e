"""Dense matrices of arbitrary-precision integers.

The whole package computes over exact Python ints, so the matrix type is a
thin immutable wrapper around a flat tuple in row-major order.  Algorithms
that need to mutate entries work on ``to_rows()`` copies.

Text format (used by the CLI): first line ``rows cols``, then the entries
row by row, whitespace separated, as decimal integers.
"""

from __future__ import annotations


class IntMatrix:
    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data):
        data = tuple(int(x) for x in data)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, entries) -> "IntMatrix":
        entries = list(entries)
        n = len(entries)
        data = [0] * (n * n)
        for i, x in enumerate(entries):
            data[i * n + i] = int(x)
        return cls(n, n, data)

    @classmethod
    def ones(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [1] * (rows * cols))

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self._data[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        """Mutable copy as a list of row lists."""
        c = self.cols
        return [list(self._data[i * c : (i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._data)

    # -- arithmetic ----------------------------------------------------------

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self._data, other._data)]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(
            self.rows, self.cols, [a - b for a, b in zip(self._data, other._data)]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-a for a in self._data])

    def __mul__(self, scalar: int) -> "IntMatrix":
        if not isinstance(scalar, int):
            return NotImplemented
        return IntMatrix(self.rows, self.cols, [scalar * a for a in self._data])

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        a = self.to_rows()
        bt = other.transpose().to_rows()
        data = []
        for arow in a:
            for bcol in bt:
                data.append(sum(x * y for x, y in zip(arow, bcol)))
        return IntMatrix(self.rows, other.cols, data)

    def mul_vector(self, vec) -> list[int]:
        """Matrix-vector product as a list of ints."""
        vec = list(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        c = self.cols
        d = self._data
        return [
            sum(d[i * c + j] * vec[j] for j in range(c)) for i in range(self.rows)
        ]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            [self._data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    # -- misc ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
            return f"IntMatrix({self.rows}x{self.cols}: {body})"
        return f"IntMatrix({self.rows}x{self.cols})"


def parse_matrix(text: str) -> IntMatrix:
    """Parse the plain-text matrix format ("rows cols" header, then entries)."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text must start with 'rows cols'")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError as exc:
        raise ValueError(f"bad matrix header {tokens[:2]!r}") from exc
    body = tokens[2:]
    if len(body) != rows * cols:
        raise ValueError(
            f"matrix body has {len(body)} entries, expected {rows * cols}"
        )
    try:
        data = [int(t) for t in body]
    except ValueError as exc:
        raise ValueError("matrix entries must be integers") from exc
    return IntMatrix(rows, cols, data)


def format_matrix(m: IntMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        lines.append(" ".join(str(x) for x in m.row(i)))
    return "\n".join(lines) + "\n"
