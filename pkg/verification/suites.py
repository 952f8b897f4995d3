"""
Named identity suites.

Each suite draws its own samples from the generator it is handed and
returns the residuals it measured; the runner compares the worst residual
with the suite tolerance. Pass/fail checks report 0.0 or 1.0.
"""

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from core.errors import NoninvertibleError, NumericError
from core.types import Parity, ScaleSide, TableKind
from entangle import (
    TwoPartyTable,
    berezinian_comparison,
    concurrence,
    cross_qutrit,
    make_qudit,
    slot_parity_counts,
    superconcurrence,
    tangle,
    tensor_states,
    witness_f,
)
from grassmann import GrassmannElement, g_supercommutator
from grassmann.sampling import random_element
from supermatrix import (
    SuperFormat,
    SuperMatrix,
    sm_berezinian,
    sm_body_array,
    sm_exp,
    sm_group_check,
    sm_log,
    sm_residual,
    sm_sdtr,
    sm_superadjoint,
    sm_supertrace,
    sm_supertranspose,
)
from supermatrix.sdtr import (
    embedded_body,
    outer_product_matrix,
    random_superqubit_coordinates,
)
from superstate import (
    GradedOperator,
    SpaceFormat,
    SuperKet,
    adjoint_matrix_element_residual,
    st_apply,
    st_dual,
    st_inner,
    st_outer,
    st_scale,
    st_superadjoint_check,
)
from verification.sampling import (
    FACTORIZATION_BRANCHES,
    SUPERQUBIT_SPACE,
    factorized_table,
    random_invertible,
    random_ket,
    random_matrix,
    random_osp_group_element,
    random_qudit_amplitudes,
    random_sl2,
)

logger = logging.getLogger(__name__)

ALGEBRA_N = 4
FORMATS = (SuperFormat(1, 1), SuperFormat(2, 1), SuperFormat(1, 2))
SPACES = (SpaceFormat(1, 1), SpaceFormat(2, 1), SpaceFormat(2, 2))

Check = Callable[[np.random.Generator, int], Iterable[float]]


@dataclass(frozen=True)
class Suite:
    """One identity with its own tolerance and sample cost.

    ``tol`` None means the tolerance of the run; ``cost`` divides the
    iteration count for expensive identities.
    """

    name: str
    check: Check
    tol: float | None = None
    cost: int = 1
    gate: bool = True

    def samples(self, iters: int) -> int:
        return max(1, iters // self.cost)


SUITES: dict[str, Suite] = {}


def suite(
    name: str, tol: float | None = None, cost: int = 1, gate: bool = True
) -> Callable[[Check], Check]:
    def register(check: Check) -> Check:
        SUITES[name] = Suite(name, check, tol=tol, cost=cost, gate=gate)
        return check

    return register


def _flag(ok: bool) -> float:
    return 0.0 if ok else 1.0


def _diff(a: GrassmannElement, b: GrassmannElement) -> float:
    return (a - b).norm_r()


def _relative(a: GrassmannElement, b: GrassmannElement) -> float:
    return _diff(a, b) / max(1.0, a.norm_r())


def _max_coefficient(z: GrassmannElement) -> float:
    return max((abs(c) for c in z.terms.values()), default=0.0)


def _pick(rng: np.random.Generator, options: tuple):
    return options[int(rng.integers(len(options)))]


def _parity(rng: np.random.Generator) -> Parity:
    return Parity(int(rng.integers(2)))


def _homogeneous(rng: np.random.Generator, parity: Parity | None = None):
    parity = _parity(rng) if parity is None else parity
    return random_element(rng, ALGEBRA_N, parity, terms=3)


# ----------------------------------------------------------------------
# Grassmann algebra
# ----------------------------------------------------------------------


@suite("grassmann.anticommutation")
def _anticommutation(rng, samples):
    thetas = [GrassmannElement.generator(i, ALGEBRA_N) for i in range(1, 5)]
    for a in thetas:
        for b in thetas:
            if a is b:
                yield (a * a).norm_r()
            else:
                yield (a * b + b * a).norm_r()


@suite("grassmann.associativity")
def _associativity(rng, samples):
    for _ in range(samples):
        a, b, c = (random_element(rng, ALGEBRA_N, terms=4) for _ in range(3))
        yield _max_coefficient((a * b) * c - a * (b * c))


@suite("grassmann.degree_additivity")
def _degree_additivity(rng, samples):
    for _ in range(samples):
        y, z = _homogeneous(rng), _homogeneous(rng)
        yz = y * z
        if yz.is_zero:
            continue
        yield _flag(yz.parity == y.parity.plus(z.parity))


@suite("grassmann.inverse")
def _inverse(rng, samples):
    for _ in range(samples):
        z = random_element(rng, ALGEBRA_N, terms=4)
        if abs(z.body) < 0.1:
            z = z + 1.0
        yield _max_coefficient(z * z.inverse() - 1.0)


@suite("grassmann.norm_submultiplicative")
def _norm_submultiplicative(rng, samples):
    for _ in range(samples):
        a = random_element(rng, ALGEBRA_N, terms=4)
        b = random_element(rng, ALGEBRA_N, terms=4)
        yield max(0.0, (a * b).norm_r() - a.norm_r() * b.norm_r())


@suite("grassmann.soul_nilpotence")
def _soul_nilpotence(rng, samples):
    for _ in range(samples):
        z = random_element(rng, ALGEBRA_N, terms=6)
        yield (z.soul ** (ALGEBRA_N + 1)).norm_r()


@suite("grassmann.star_order")
def _star_order(rng, samples):
    for _ in range(samples):
        z = random_element(rng, ALGEBRA_N, terms=5)
        yield _diff(z.star().star(), z)


@suite("grassmann.supercommutativity")
def _supercommutativity(rng, samples):
    for _ in range(samples):
        yield g_supercommutator(_homogeneous(rng), _homogeneous(rng)).norm_r()


@suite("grassmann.superstar_square")
def _superstar_square(rng, samples):
    for _ in range(samples):
        z = _homogeneous(rng)
        yield _diff(z.superstar().superstar(), z * z.parity.sign)


# ----------------------------------------------------------------------
# Supermatrices
# ----------------------------------------------------------------------


@suite("supermatrix.berezinian_body", cost=5)
def _berezinian_body(rng, samples):
    for _ in range(samples):
        m = random_invertible(rng, _pick(rng, FORMATS), ALGEBRA_N)
        p = m.format.p
        body = sm_body_array(m)
        expected = np.linalg.det(body[:p, :p]) / np.linalg.det(body[p:, p:])
        yield abs(sm_berezinian(m).body - expected) / max(1.0, abs(expected))


@suite("supermatrix.berezinian_closed_form")
def _berezinian_closed_form(rng, samples):
    for _ in range(samples):
        a = _homogeneous(rng, Parity.EVEN)
        d = _homogeneous(rng, Parity.EVEN) + 1.0
        if abs(d.body) < 0.1:
            continue
        beta, gamma = _homogeneous(rng, Parity.ODD), _homogeneous(rng, Parity.ODD)
        m = SuperMatrix.from_rows(1, 1, [[a, beta], [gamma, d]], ALGEBRA_N)
        expected = a * d.inverse() - beta * gamma * (d * d).inverse()
        yield _max_coefficient(sm_berezinian(m) - expected)


@suite("supermatrix.berezinian_exp", tol=1e-8, cost=5)
def _berezinian_exp(rng, samples):
    for _ in range(samples):
        fmt = _pick(rng, FORMATS)
        k = random_matrix(rng, fmt, Parity.EVEN, ALGEBRA_N, scale=0.3)
        body_norm = float(np.linalg.norm(sm_body_array(k), 2))
        if body_norm > 1.0:
            k = k * (1.0 / body_norm)
        yield _diff(sm_berezinian(sm_exp(k)), sm_supertrace(k).exp())


@suite("supermatrix.berezinian_log", tol=1e-8, cost=5)
def _berezinian_log(rng, samples):
    for _ in range(samples):
        m = random_invertible(rng, _pick(rng, FORMATS), ALGEBRA_N, spread=0.1)
        try:
            log_m = sm_log(m)
        except NumericError:
            continue
        yield _relative(sm_berezinian(m), sm_supertrace(log_m).exp())


@suite("supermatrix.berezinian_product", cost=5)
def _berezinian_product(rng, samples):
    for _ in range(samples):
        fmt = _pick(rng, FORMATS)
        m = random_invertible(rng, fmt, ALGEBRA_N)
        n = random_invertible(rng, fmt, ALGEBRA_N)
        lhs = sm_berezinian(m @ n)
        yield _relative(lhs, sm_berezinian(m) * sm_berezinian(n))


@suite("supermatrix.berezinian_transpose", cost=5)
def _berezinian_transpose(rng, samples):
    for _ in range(samples):
        m = random_invertible(rng, _pick(rng, FORMATS), ALGEBRA_N)
        yield _relative(sm_berezinian(sm_supertranspose(m)), sm_berezinian(m))


@suite("supermatrix.noninvertible_d")
def _noninvertible_d(rng, samples):
    for _ in range(min(samples, 100)):
        m = random_matrix(rng, SuperFormat(2, 1), Parity.EVEN, ALGEBRA_N)
        rows = [list(row) for row in m.entries]
        rows[2][2] = rows[2][2].soul
        singular = SuperMatrix.from_rows(2, 1, rows, ALGEBRA_N)
        try:
            sm_berezinian(singular)
        except NoninvertibleError as exc:
            yield _flag("not defined for noninvertible" in str(exc))
        else:
            yield 1.0


@suite("supermatrix.product_parity")
def _product_parity(rng, samples):
    for _ in range(samples):
        fmt = _pick(rng, FORMATS)
        m = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        n = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        yield _flag((m @ n).parity == m.parity.plus(n.parity))


@suite("supermatrix.sdtr_body_det", tol=1e-9)
def _sdtr_body_det(rng, samples):
    for _ in range(samples):
        body = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        value = sm_sdtr(embedded_body(body, ALGEBRA_N))
        yield _diff(value, GrassmannElement.scalar(np.linalg.det(body), ALGEBRA_N))


@suite("supermatrix.sdtr_outer_vanishing")
def _sdtr_outer_vanishing(rng, samples):
    for _ in range(samples):
        m = outer_product_matrix(
            random_superqubit_coordinates(rng, ALGEBRA_N),
            random_superqubit_coordinates(rng, ALGEBRA_N),
        )
        yield sm_sdtr(m).norm_r()


@suite("supermatrix.superadjoint_product")
def _superadjoint_product(rng, samples):
    for _ in range(samples):
        fmt = _pick(rng, FORMATS)
        m = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        n = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        rhs = sm_superadjoint(n) @ sm_superadjoint(m)
        if m.parity and n.parity:
            rhs = -rhs
        yield sm_residual(sm_superadjoint(m @ n), rhs)


@suite("supermatrix.supertrace_cyclic")
def _supertrace_cyclic(rng, samples):
    for _ in range(samples):
        fmt = _pick(rng, FORMATS)
        m = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        n = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        rhs = sm_supertrace(n @ m)
        if m.parity and n.parity:
            rhs = -rhs
        yield _max_coefficient(sm_supertrace(m @ n) - rhs)


@suite("supermatrix.supertrace_transpose")
def _supertrace_transpose(rng, samples):
    for _ in range(samples):
        m = random_matrix(rng, _pick(rng, FORMATS), _parity(rng), ALGEBRA_N)
        yield _diff(sm_supertrace(sm_supertranspose(m)), sm_supertrace(m))


@suite("supermatrix.supertranspose_module")
def _supertranspose_module(rng, samples):
    for _ in range(samples):
        m = random_matrix(rng, _pick(rng, FORMATS), _parity(rng), ALGEBRA_N)
        a = _homogeneous(rng, Parity.EVEN)
        yield sm_residual(sm_supertranspose(a * m), a * sm_supertranspose(m))


@suite("supermatrix.supertranspose_order")
def _supertranspose_order(rng, samples):
    for _ in range(samples):
        m = random_matrix(rng, _pick(rng, FORMATS), _parity(rng), ALGEBRA_N)
        image = m
        for _ in range(4):
            image = sm_supertranspose(image)
        yield sm_residual(image, m)
        off_diagonal = max(
            m.entries[i][j].norm_r()
            for i in range(m.size)
            for j in range(m.size)
            if m.format.index_parity(i) != m.format.index_parity(j)
        )
        if off_diagonal > 1e-6:
            twice = sm_supertranspose(sm_supertranspose(m))
            yield _flag(sm_residual(twice, m) > 1e-6)


@suite("supermatrix.supertranspose_product")
def _supertranspose_product(rng, samples):
    for _ in range(samples):
        fmt = _pick(rng, FORMATS)
        m = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        n = random_matrix(rng, fmt, _parity(rng), ALGEBRA_N)
        rhs = sm_supertranspose(n) @ sm_supertranspose(m)
        if m.parity and n.parity:
            rhs = -rhs
        yield sm_residual(sm_supertranspose(m @ n), rhs)


# ----------------------------------------------------------------------
# Groups
# ----------------------------------------------------------------------


@suite("groups.osp_exponentials", tol=1e-8, cost=5)
def _osp_exponentials(rng, samples):
    for _ in range(min(samples, 100)):
        g = random_osp_group_element(rng, ALGEBRA_N)
        yield sm_group_check(g, "OSP21", tol=1e-8).residual


@suite("groups.slocc_concurrence", tol=1e-9)
def _slocc_concurrence(rng, samples):
    for _ in range(samples):
        x = random_qudit_amplitudes(rng, 4).reshape(2, 2)
        y = random_sl2(rng) @ x @ random_sl2(rng).T
        scale = float(np.sum(np.abs(y) ** 2))
        transformed = concurrence(y / np.sqrt(scale)) * scale
        yield abs(transformed - concurrence(x))


# ----------------------------------------------------------------------
# Super Hilbert space
# ----------------------------------------------------------------------


def _pair(rng, parities=None):
    fmt = _pick(rng, SPACES)
    first, second = parities or (_parity(rng), _parity(rng))
    return (
        random_ket(rng, fmt, first, ALGEBRA_N),
        random_ket(rng, fmt, second, ALGEBRA_N),
    )


def _operator(rng, space: SpaceFormat) -> GradedOperator:
    fmt = SuperFormat(space.r, space.s)
    return GradedOperator(random_matrix(rng, fmt, _parity(rng), ALGEBRA_N))


@suite("superstate.adjoint_identity", cost=2)
def _adjoint_identity(rng, samples):
    for _ in range(samples):
        phi, psi = _pair(rng)
        yield st_superadjoint_check(_operator(rng, phi.format), phi, psi)


@suite("superstate.adjoint_matrix_element", cost=2)
def _adjoint_matrix_element(rng, samples):
    for _ in range(samples):
        phi, psi = _pair(rng)
        yield adjoint_matrix_element_residual(_operator(rng, phi.format), phi, psi)


@suite("superstate.apply_parity")
def _apply_parity(rng, samples):
    for _ in range(samples):
        psi, _ = _pair(rng)
        op = _operator(rng, psi.format)
        yield _flag(st_apply(op, psi).parity == psi.parity.plus(op.parity))


@suite("superstate.body_positivity")
def _body_positivity(rng, samples):
    for _ in range(samples):
        psi = random_ket(rng, _pick(rng, SPACES), Parity.EVEN, ALGEBRA_N)
        norm = st_inner(psi, psi).body
        yield _flag(norm.real > 0 and abs(norm.imag) <= 1e-12)


@suite("superstate.density_supertrace")
def _density_supertrace(rng, samples):
    for _ in range(samples):
        psi = random_ket(rng, SUPERQUBIT_SPACE, _parity(rng), ALGEBRA_N)
        expected = st_inner(psi, psi) * psi.parity.sign
        yield _diff(sm_supertrace(st_outer(psi)), expected)


@suite("superstate.dual_order")
def _dual_order(rng, samples):
    for _ in range(samples):
        psi, _ = _pair(rng)
        twice = st_dual(st_dual(psi))
        signed = SuperKet.from_coords(
            psi.format,
            psi.parity,
            [value * psi.parity.sign for value in psi.coords],
            psi.n,
        )
        yield twice.residual(signed)
        yield st_dual(st_dual(twice)).residual(psi)


@suite("superstate.inner_symmetry")
def _inner_symmetry(rng, samples):
    for _ in range(samples):
        parity = _parity(rng)
        phi, psi = _pair(rng, (parity, parity))
        yield _diff(st_inner(phi, psi).superstar(), st_inner(psi, phi))


@suite("superstate.parity_orthogonality")
def _parity_orthogonality(rng, samples):
    for _ in range(samples):
        phi, psi = _pair(rng, (Parity.EVEN, Parity.ODD))
        yield st_inner(phi, psi).norm_r() + st_inner(psi, phi).norm_r()


@suite("superstate.scaling_interchange")
def _scaling_interchange(rng, samples):
    for _ in range(samples):
        psi, _ = _pair(rng)
        z = _homogeneous(rng)
        lhs = st_dual(st_scale(st_dual(psi), z, ScaleSide.LEFT))
        rhs = st_scale(psi, z.superstar(), ScaleSide.RIGHT)
        if int(psi.parity) * (int(z.parity) + 1) % 2:
            rhs = st_scale(rhs, GrassmannElement.scalar(-1, ALGEBRA_N))
        yield lhs.residual(rhs)


# ----------------------------------------------------------------------
# Entanglement
# ----------------------------------------------------------------------


@suite("entangle.cross_qutrit_lagrange")
def _cross_qutrit_lagrange(rng, samples):
    for _ in range(samples):
        a = rng.normal(size=3) + 1j * rng.normal(size=3)
        b = rng.normal(size=3) + 1j * rng.normal(size=3)
        qa = make_qudit(a, force=True)
        qb = make_qudit(b, force=True)
        expected = (
            qa.norm_squared * qb.norm_squared - abs(np.vdot(b, a)) ** 2
        )
        yield abs(cross_qutrit(qa, qb).norm_squared - expected)


@suite("entangle.separability_vanishing", tol=1e-12, cost=2)
def _separability_vanishing(rng, samples):
    for branch in FACTORIZATION_BRANCHES:
        for _ in range(samples):
            table = factorized_table(rng, ALGEBRA_N, branch)
            yield _max_coefficient(witness_f(table))


@suite("entangle.slot_counts")
def _slot_counts(rng, samples):
    yield _flag(slot_parity_counts(TableKind.SUPER_EVEN) == (5, 4))
    yield _flag(slot_parity_counts(TableKind.SUPER_ODD) == (4, 5))


@suite("entangle.superconcurrence_vanishing", cost=2)
def _superconcurrence_vanishing(rng, samples):
    for branch in FACTORIZATION_BRANCHES:
        for _ in range(samples):
            yield superconcurrence(factorized_table(rng, ALGEBRA_N, branch))


@suite("entangle.tangle_concurrence")
def _tangle_concurrence(rng, samples):
    for _ in range(samples):
        x = random_qudit_amplitudes(rng, 4).reshape(2, 2)
        yield abs(tangle(x) - concurrence(x) ** 2)


@suite("entangle.tensor_parity")
def _tensor_parity(rng, samples):
    for left in Parity:
        for right in Parity:
            a = random_ket(rng, SUPERQUBIT_SPACE, left, ALGEBRA_N)
            b = random_ket(rng, SUPERQUBIT_SPACE, right, ALGEBRA_N)
            yield _flag(tensor_states(a, b).parity == left.plus(right))


def random_even_table(rng: np.random.Generator) -> TwoPartyTable:
    slots = {}
    for j in range(3):
        for k in range(3):
            parity = Parity((j == 2) + (k == 2))
            slots[f"{j}{k}"] = random_element(rng, ALGEBRA_N, parity, terms=2)
    return TwoPartyTable(TableKind.SUPER_EVEN, slots, ALGEBRA_N)


@suite("entangle.witness_body")
def _witness_body(rng, samples):
    for _ in range(samples):
        table = random_even_table(rng)
        body = table.body_array()
        expected = np.linalg.det(body[:2, :2] * body[2, 2])
        yield abs(witness_f(table).body - expected) / max(1.0, abs(expected))


# ----------------------------------------------------------------------
# Informational
# ----------------------------------------------------------------------


def _act(g: SuperMatrix, h: SuperMatrix, kets) -> TwoPartyTable:
    slots: dict[str, GrassmannElement] = {}
    for a, b in kets:
        state = tensor_states(
            st_apply(GradedOperator(g), a), st_apply(GradedOperator(h), b)
        )
        for (j, k), value in state.amplitudes.items():
            name = f"{j}{k}"
            slots[name] = slots.get(name, GrassmannElement.zero(ALGEBRA_N)) + value
    return TwoPartyTable(TableKind.SUPER_EVEN, slots, ALGEBRA_N)


@suite("entangle.superconcurrence_osp_drift", cost=10, gate=False)
def _superconcurrence_osp_drift(rng, samples):
    identity = SuperMatrix.identity(SuperFormat(2, 1), ALGEBRA_N)
    for _ in range(samples):
        kets = [
            (
                random_ket(rng, SUPERQUBIT_SPACE, Parity.EVEN, ALGEBRA_N),
                random_ket(rng, SUPERQUBIT_SPACE, Parity.EVEN, ALGEBRA_N),
            )
            for _ in range(2)
        ]
        before = superconcurrence(_act(identity, identity, kets))
        g = random_osp_group_element(rng, ALGEBRA_N)
        h = random_osp_group_element(rng, ALGEBRA_N)
        yield abs(superconcurrence(_act(g, h, kets)) - before)


@suite("entangle.berezinian_comparison", gate=False)
def _berezinian_comparison(rng, samples):
    for _ in range(samples):
        table = random_even_table(rng)
        if abs(table.element(2, 2).body) < 0.1:
            continue
        yield berezinian_comparison(table).gap
