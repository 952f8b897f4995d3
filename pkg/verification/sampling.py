"""Seeded samplers for the verification suites and the property tests."""

from itertools import product

import numpy as np

from core.types import Parity
from entangle import TwoPartyTable, tensor_states
from grassmann.sampling import random_element
from supermatrix import SuperFormat, SuperMatrix, osp_algebra_element, sm_exp
from superstate import SpaceFormat, SuperKet

SUPERQUBIT_SPACE = SpaceFormat(2, 1)

# (left parity, right parity, soul-only) for every factorized two-superqubit table
FACTORIZATION_BRANCHES: tuple[tuple[Parity, Parity, bool], ...] = tuple(
    (left, right, soul_only)
    for left, right in product(Parity, Parity)
    for soul_only in (False, True)
)


def branch_name(branch: tuple[Parity, Parity, bool]) -> str:
    left, right, soul_only = branch
    name = f"{'eo'[left]}{'eo'[right]}"
    return f"{name}-soul" if soul_only else name


def random_matrix(
    rng: np.random.Generator,
    fmt: SuperFormat,
    parity: Parity,
    n: int,
    terms: int = 2,
    scale: float = 0.5,
    body_scale: float = 1.0,
) -> SuperMatrix:
    """Homogeneous supermatrix with random entries of the required parities."""
    rows = []
    for i in range(fmt.size):
        row = []
        for j in range(fmt.size):
            entry_parity = parity.plus(fmt.index_parity(i), fmt.index_parity(j))
            row.append(
                random_element(
                    rng,
                    n,
                    entry_parity,
                    terms=terms,
                    scale=scale,
                    body_scale=body_scale,
                )
            )
        rows.append(row)
    return SuperMatrix.from_rows(fmt.p, fmt.q, rows, n, parity)


def random_invertible(
    rng: np.random.Generator, fmt: SuperFormat, n: int, spread: float = 0.3
) -> SuperMatrix:
    """deg-0 matrix whose body is a perturbation of the identity."""
    m = random_matrix(rng, fmt, Parity.EVEN, n, scale=0.3)
    body = np.eye(fmt.size) + spread * (
        rng.normal(size=(fmt.size, fmt.size))
        + 1j * rng.normal(size=(fmt.size, fmt.size))
    )
    rows = []
    for i, row in enumerate(m.entries):
        new_row = []
        for j, value in enumerate(row):
            if fmt.index_parity(i) == fmt.index_parity(j):
                value = value.soul + complex(body[i, j])
            new_row.append(value)
        rows.append(new_row)
    return SuperMatrix.from_rows(fmt.p, fmt.q, rows, n)


def random_ket(
    rng: np.random.Generator,
    fmt: SpaceFormat,
    parity: Parity,
    n: int,
    soul_only: bool = False,
) -> SuperKet:
    coords = []
    for index in range(fmt.size):
        coord_parity = parity.plus(fmt.slot_parity(index))
        coords.append(
            random_element(
                rng, n, coord_parity, terms=2, body=False if soul_only else None
            )
        )
    return SuperKet.from_coords(fmt, parity, coords, n)


def random_qudit_amplitudes(rng: np.random.Generator, d: int) -> np.ndarray:
    amps = rng.normal(size=d) + 1j * rng.normal(size=d)
    return amps / np.linalg.norm(amps)


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    """Complex 2×2 matrix with unit determinant."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = np.linalg.det(m)
        if abs(det) > 0.1:
            return m / np.sqrt(det)


def random_osp_element(
    rng: np.random.Generator, n: int, scale: float = 0.3
) -> SuperMatrix:
    """Random element of the orthosymplectic algebra."""
    a = [
        [
            random_element(
                rng, n, Parity.EVEN, terms=1, scale=scale, body_scale=scale
            )
            for _ in range(2)
        ]
        for _ in range(2)
    ]
    c = [
        random_element(rng, n, Parity.ODD, terms=2, scale=scale)
        for _ in range(2)
    ]
    return osp_algebra_element(a, c, n)


def random_osp_group_element(
    rng: np.random.Generator, n: int, scale: float = 0.3
) -> SuperMatrix:
    return sm_exp(random_osp_element(rng, n, scale))


def factorized_table(
    rng: np.random.Generator, n: int, branch: tuple[Parity, Parity, bool]
) -> TwoPartyTable:
    """Table of a product of two random superqubits on the given branch."""
    left, right, soul_only = branch
    a = random_ket(rng, SUPERQUBIT_SPACE, left, n, soul_only=soul_only)
    b = random_ket(rng, SUPERQUBIT_SPACE, right, n)
    return TwoPartyTable.from_multistate(tensor_states(a, b))

