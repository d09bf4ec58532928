"""Dense integer matrices as plain lists of rows, plus generators."""

from __future__ import annotations

import random


def dims(m: list[list[int]]) -> tuple[int, int]:
    return len(m), len(m[0])


def validate_matrix(m: list[list[int]], bound: int, name: str = "matrix") -> None:
    """Reject ragged shapes and entries outside {0, ..., bound}."""
    if not m or not m[0]:
        raise ValueError(f"{name} must be non-empty")
    width = len(m[0])
    for row in m:
        if len(row) != width:
            raise ValueError(f"{name} has ragged rows")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"{name} entries must be ints, got {x!r}")
            if x < 0 or x > bound:
                raise ValueError(f"{name} entry {x} outside 0..{bound}")


def ones(rows: int, cols: int) -> list[list[int]]:
    return [[1] * cols for _ in range(rows)]


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def random_matrix(rows: int, cols: int, bound: int, rng: random.Random) -> list[list[int]]:
    return [[rng.randint(0, bound) for _ in range(cols)] for _ in range(rows)]


def random_boolean_matrix(rows: int, cols: int, rng: random.Random,
                          density: float = 0.5) -> list[list[int]]:
    return [[1 if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def random_boolean_vector(n: int, rng: random.Random, density: float = 0.5) -> list[int]:
    return [1 if rng.random() < density else 0 for _ in range(n)]
