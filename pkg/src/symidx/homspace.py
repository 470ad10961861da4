"""Compact homogeneous spaces presented by reductive pairs.

A space is given by a Lie algebra ``g`` of Killing fields, an isotropy
subalgebra ``h``, a reductive complement ``m`` identified with the tangent
space at a base point, and an inner product on ``m``.  Everything downstream
(covariant derivatives at the base point, the space of Killing fields with
vanishing derivative there, curvature operators along homogeneous geodesics)
is computed from the structure tensor alone, relative to the supplied
algebra: if ``g`` is smaller than the full isometry algebra the derived
invariants are relative to ``g``, and the reports say so.

The covariant derivative at the base point comes from the Koszul identity
specialized to Killing fields X, Y, Z (each a one-parameter flow through
the base point):

    2 <nabla_U X, V> = <[xi_U, X], V> + <[xi_U, xi_V], X> + <[X, xi_V], U>

where brackets are evaluated at the base point and ``xi_U`` is any Killing
field through U there.  The result is independent of the chosen lifts
exactly when the isotropy acts by skew operators, which the constructor
validates; the finite difference checks in :mod:`symidx.numcheck` confirm
the same derivative through coordinate Christoffel symbols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .liealg import (
    DEFAULT_TOL,
    BilinearForm,
    LieAlgebra,
    Subspace,
    adjoint,
    bi_invariant_directions,
    bracket,
    largest_invariant_subspace,
    numerical_kernel,
    orthonormal_columns,
    reference_form,
)

#: Residual ceiling for derived structural statements (involutivity,
#: self-adjointness, geodesic preconditions).  Looser than the construction
#: tolerance because these residuals accumulate a few matrix products.
CHECK_TOL = 1e-8


class HomogeneousSpace:
    """A reductive homogeneous space with an invariant metric.

    Parameters
    ----------
    algebra : LieAlgebra
        Killing fields of the space, in the right-invariant convention.
    isotropy : Subspace
        Subalgebra of fields vanishing at the base point.
    complement : Subspace or None
        Reductive complement identified with the tangent space.  When
        omitted it is the orthogonal complement of the isotropy for the
        ad-invariant reference form of the algebra.
    metric : BilinearForm
        Inner product on the tangent space, in complement coordinates.
    label : str
        Display name used in reports.
    check_effective : bool
        Reject pairs where the algebra has a nonzero ideal inside the
        isotropy (fields that act trivially).

    Raises
    ------
    ValueError
        If the isotropy is not a subalgebra, the complement is not
        reductive or does not complete the isotropy to the whole algebra,
        the metric is not positive definite, or the isotropy fails to act
        by metric-skew operators on the complement.
    """

    def __init__(self, algebra: LieAlgebra, isotropy: Subspace,
                 metric: BilinearForm, complement: Subspace | None = None,
                 label: str = "", check_effective: bool = True,
                 tol: float = DEFAULT_TOL):
        self.algebra = algebra
        self.isotropy = isotropy
        self.label = label
        self.tol = float(tol)
        n = algebra.dim
        if isotropy.ambient_dim != n:
            raise ValueError("isotropy lives in the wrong ambient dimension")

        for a in range(isotropy.dim):
            for b in range(a + 1, isotropy.dim):
                w = bracket(algebra, isotropy.basis[:, a], isotropy.basis[:, b])
                if not isotropy.contains(w, CHECK_TOL):
                    raise ValueError(
                        f"isotropy is not a subalgebra: bracket of basis "
                        f"vectors {a} and {b} leaves it")

        if complement is None:
            q = reference_form(algebra, tol).gram
            complement = Subspace(n, numerical_kernel(isotropy.basis.T @ q, tol))
        if complement.ambient_dim != n:
            raise ValueError("complement lives in the wrong ambient dimension")
        if isotropy.dim + complement.dim != n:
            raise ValueError(
                f"isotropy ({isotropy.dim}) and complement ({complement.dim}) "
                f"do not add up to the algebra dimension ({n})")
        self.complement = complement

        t = np.hstack([isotropy.basis, complement.basis])
        if np.linalg.matrix_rank(t) < n:
            raise ValueError("isotropy and complement overlap")
        t_inv = np.linalg.inv(t)
        self.h_basis = isotropy.basis
        self.m_basis = complement.basis
        self.h_coords = t_inv[: isotropy.dim, :]
        #: Value of a Killing field at the base point, as a matrix:
        #: tangent coordinates of the field with algebra coefficients x
        #: are ``eval_matrix @ x``.
        self.eval_matrix = t_inv[isotropy.dim:, :]

        if metric.dim != complement.dim:
            raise ValueError(
                f"metric dimension {metric.dim} does not match the "
                f"complement dimension {complement.dim}")
        if not metric.is_positive_definite(tol):
            raise ValueError("metric is not positive definite")
        self.metric = metric
        self._gram_inv = np.linalg.inv(metric.gram)

        # reductivity and skew isotropy action, checked together
        for a in range(isotropy.dim):
            z = isotropy.basis[:, a]
            ad_z = adjoint(algebra, z)
            imgs = ad_z @ self.m_basis
            reductive_resid = float(np.max(np.abs(self.h_coords @ imgs))) \
                if isotropy.dim else 0.0
            if reductive_resid > CHECK_TOL:
                raise ValueError(
                    f"complement is not reductive: isotropy vector {a} maps "
                    f"it outside itself (residual {reductive_resid:.3e})")
            op = self.eval_matrix @ imgs
            skew = metric.gram @ op
            skew_resid = float(np.max(np.abs(skew + skew.T)))
            if skew_resid > CHECK_TOL:
                raise ValueError(
                    f"isotropy vector {a} does not act skew-symmetrically "
                    f"for the metric (residual {skew_resid:.3e}); the metric "
                    f"is not invariant")

        if check_effective and isotropy.dim > 0:
            ineffective = largest_invariant_subspace(
                algebra, np.eye(n), isotropy, tol)
            if ineffective.dim > 0:
                raise ValueError(
                    f"the pair is not effective: an ideal of dimension "
                    f"{ineffective.dim} lies inside the isotropy")

        # brackets of complement lifts, evaluated at the base point
        m = self.m_basis
        br = np.einsum("ia,jb,ijk->abk", m, m, algebra.structure)
        self._mm_eval = np.einsum("abk,ck->abc", br, self.eval_matrix)

    # -- basic geometry -----------------------------------------------------

    @property
    def dim(self) -> int:
        """Dimension of the space (= dimension of the complement)."""
        return self.complement.dim

    @property
    def dim_isotropy(self) -> int:
        return self.isotropy.dim

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Value at the base point of the Killing field with coefficients x."""
        return self.eval_matrix @ np.asarray(x, dtype=float)

    def lift(self, v: np.ndarray) -> np.ndarray:
        """The complement lift of a tangent vector (a canonical Killing field)."""
        return self.m_basis @ np.asarray(v, dtype=float)

    def tangent_norm(self, v: np.ndarray) -> float:
        v = np.asarray(v, dtype=float)
        return float(np.sqrt(v @ self.metric.gram @ v))

    def nabla_at_base(self, x: np.ndarray) -> np.ndarray:
        """Covariant derivative at the base point of the Killing field x.

        Returns the matrix N with ``N @ u = nabla_u X`` in tangent
        coordinates.  Comes from the Koszul identity in the module
        docstring; metric invariance under the isotropy (validated at
        construction) makes the three lift-dependent terms cancel.
        """
        x = np.asarray(x, dtype=float)
        g = self.metric.gram
        ad_x = adjoint(self.algebra, x)
        v = self.eval_matrix @ ad_x @ self.m_basis
        term1 = -(g @ v).T
        term2 = self._mm_eval @ (g @ self.evaluate(x))
        term3 = g @ v
        rhs = 0.5 * (term1 + term2 + term3)
        return self._gram_inv @ rhs.T

    def nabla_operator(self) -> np.ndarray:
        """All base point derivatives at once: shape (dim^2, algebra dim).

        Column i is ``nabla_at_base(e_i)`` flattened; the kernel of this
        matrix is the space of Killing fields parallel at the base point.
        """
        cols = [self.nabla_at_base(e).reshape(-1)
                for e in np.eye(self.algebra.dim)]
        return np.array(cols).T


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class TransvectionReport:
    """Killing fields parallel at the base point and what they generate.

    ``p_space`` collects the fields with vanishing covariant derivative at
    the base point, ``k_space`` the span of their pairwise brackets, and
    ``s_space`` the tangent subspace of their values.  ``index`` is the
    dimension of ``s_space`` and ``coindex`` its tangent codimension.  All
    of it is relative to the supplied algebra of Killing fields.
    """

    p_space: Subspace
    k_space: Subspace
    s_space: Subspace
    index: int
    coindex: int
    dim_transvection: int
    involutive_ok: bool
    relative_to_supplied_algebra: bool = True


@dataclass
class BoundReport:
    """Dimension bound for the complementary factor of the symmetry ideal.

    ``gD`` is the largest ideal of the algebra containing only fields
    tangent to the distinguished foliation (isotropy plus lifted
    ``s_space``), ``g_prime`` its orthogonal ideal complement for the
    ad-invariant reference form.  The report compares
    ``lhs = 2 dim(g_prime)`` against ``rhs = k (k + 1)`` for the coindex
    ``k``; ``equality`` flags the extremal case.
    """

    gD: Subspace
    g_prime: Subspace
    k: int
    lhs: int
    rhs: int
    equality: bool


@dataclass
class JacobiSpectrum:
    """Spectrum of the curvature operator along a homogeneous geodesic.

    ``eigenvalues`` are ascending, ``eigenvectors`` hold matching columns
    orthonormal for the metric, ``operator`` is the full matrix in tangent
    coordinates, and ``psd_ok`` records positive semidefiniteness up to
    roundoff.  The generating field is normalized to unit speed at the
    base point and returned in ``direction``.
    """

    direction: np.ndarray
    operator: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    psd_ok: bool
    selfadjoint_residual: float


# ---------------------------------------------------------------------------
# parallel Killing fields and the symmetry index
# ---------------------------------------------------------------------------

def transvection_space(sp: HomogeneousSpace,
                       tol: float = DEFAULT_TOL) -> TransvectionReport:
    """Compute the parallel-at-base Killing fields and the symmetry index.

    The kernel of the stacked derivative operator gives ``p_space``; its
    values at the base point give ``s_space`` whose dimension is the index
    of symmetry (relative to the supplied algebra).  The pair
    ``k_space + p_space`` is checked for the expected bracket relations
    ``[k, k] in k`` and ``[k, p] in p``.
    """
    alg = sp.algebra
    p = Subspace(alg.dim, numerical_kernel(sp.nabla_operator(), tol))
    s = Subspace.from_spanning(sp.dim, sp.eval_matrix @ p.basis, tol)

    k_cols = []
    for a in range(p.dim):
        for b in range(a + 1, p.dim):
            k_cols.append(bracket(alg, p.basis[:, a], p.basis[:, b]))
    k_arr = np.array(k_cols).T if k_cols else np.zeros((alg.dim, 0))
    k = Subspace.from_spanning(alg.dim, k_arr, tol)

    involutive = True
    for a in range(k.dim):
        for b in range(k.dim):
            if not k.contains(bracket(alg, k.basis[:, a], k.basis[:, b]), CHECK_TOL):
                involutive = False
        for b in range(p.dim):
            if not p.contains(bracket(alg, k.basis[:, a], p.basis[:, b]), CHECK_TOL):
                involutive = False

    joint = Subspace.from_spanning(alg.dim, np.hstack([k.basis, p.basis]), tol)
    return TransvectionReport(
        p_space=p, k_space=k, s_space=s,
        index=s.dim, coindex=sp.dim - s.dim,
        dim_transvection=joint.dim, involutive_ok=involutive,
    )


def symmetry_ideal(sp: HomogeneousSpace, report: TransvectionReport | None = None,
                   tol: float = DEFAULT_TOL) -> BoundReport:
    """Split off the ideal responsible for the parallel directions.

    Seeds the largest-ideal iteration with isotropy plus the lifted
    ``s_space``; the orthogonal complement for the ad-invariant reference
    form is again an ideal (internal error if the numerics disagree) and
    its dimension enters the bound ``2 dim(g_prime) <= k (k + 1)``.
    """
    if report is None:
        report = transvection_space(sp, tol)
    alg = sp.algebra
    n = alg.dim
    seed = Subspace.from_spanning(
        n, np.hstack([sp.h_basis, sp.m_basis @ report.s_space.basis]), tol)
    g_d = largest_invariant_subspace(alg, np.eye(n), seed, tol)

    q = reference_form(alg, tol).gram
    g_prime = Subspace(n, numerical_kernel(g_d.basis.T @ q, tol)) \
        if g_d.dim else Subspace.full(n)
    if g_d.dim + g_prime.dim != n:
        raise RuntimeError("internal: orthogonal split of the symmetry ideal "
                           "has the wrong dimension")
    p_out = np.eye(n) - g_prime.projector()
    for i in range(n):
        resid = float(np.max(np.abs(p_out @ adjoint(alg, np.eye(n)[:, i])
                                    @ g_prime.basis))) if g_prime.dim else 0.0
        if resid > CHECK_TOL:
            raise RuntimeError(
                f"internal: complement of the symmetry ideal is not an ideal "
                f"(residual {resid:.3e})")

    k = report.coindex
    lhs = 2 * g_prime.dim
    rhs = k * (k + 1)
    return BoundReport(gD=g_d, g_prime=g_prime, k=k,
                       lhs=lhs, rhs=rhs, equality=lhs == rhs)


def perpendicular_killing_space(sp: HomogeneousSpace,
                                report: TransvectionReport | None = None,
                                tol: float = DEFAULT_TOL) -> Subspace:
    """Largest bracket-stable space of fields orthogonal to ``s_space``.

    Starts from all Killing fields whose base point value is orthogonal to
    the parallel directions and shrinks to the largest subspace invariant
    under ``k_space`` and ``p_space``.
    """
    if report is None:
        report = transvection_space(sp, tol)
    rows = report.s_space.basis.T @ sp.metric.gram @ sp.eval_matrix
    seed = Subspace(sp.algebra.dim, numerical_kernel(rows, tol))
    gens = np.hstack([report.k_space.basis, report.p_space.basis])
    if gens.shape[1] == 0:
        return seed
    return largest_invariant_subspace(sp.algebra, gens, seed, tol)


# ---------------------------------------------------------------------------
# curvature along homogeneous geodesics
# ---------------------------------------------------------------------------

def jacobi_operator(sp: HomogeneousSpace, x: np.ndarray,
                    tol: float = CHECK_TOL) -> JacobiSpectrum:
    """Curvature operator R(., c')c' along the orbit geodesic of a field.

    Parameters
    ----------
    sp : HomogeneousSpace
    x : ndarray
        Algebra coefficients of a Killing field whose one-parameter orbit
        through the base point is a geodesic.  The field is rescaled to
        unit speed at the base point, so the eigenvalues are sectional
        curvatures of the planes spanned by the direction and the
        eigenvectors.
    tol : float
        Ceiling for the geodesic precondition and the self-adjointness
        and lift-independence residuals.

    Raises
    ------
    ValueError
        If the field vanishes at the base point, or its orbit is not a
        geodesic there (nonzero covariant derivative in its own
        direction), or the double bracket depends on the isotropy part of
        lifts, which would make the operator ill-defined.
    """
    x = np.asarray(x, dtype=float)
    speed = sp.tangent_norm(sp.evaluate(x))
    if speed <= tol:
        raise ValueError("field evaluates to zero at the base point; "
                         "it generates no geodesic direction")
    xn = x / speed
    drift = sp.nabla_at_base(xn) @ sp.evaluate(xn)
    drift_norm = float(np.linalg.norm(drift))
    if drift_norm > tol:
        raise ValueError(
            f"orbit of the field is not a geodesic at the base point "
            f"(covariant derivative along itself has norm {drift_norm:.3e})")

    ad_x = adjoint(sp.algebra, xn)
    if sp.dim_isotropy:
        lift_resid = float(np.max(np.abs(
            sp.eval_matrix @ ad_x @ ad_x @ sp.h_basis)))
        if lift_resid > tol:
            raise ValueError(
                f"curvature operator depends on the lift "
                f"(isotropy residual {lift_resid:.3e})")
    op = -sp.eval_matrix @ ad_x @ ad_x @ sp.m_basis

    g = sp.metric.gram
    go = g @ op
    selfadjoint_resid = float(np.max(np.abs(go - go.T)))
    if selfadjoint_resid > tol:
        raise ValueError(
            f"curvature operator is not self-adjoint for the metric "
            f"(residual {selfadjoint_resid:.3e})")
    w, vecs = scipy.linalg.eigh(0.5 * (go + go.T), g)
    return JacobiSpectrum(
        direction=xn, operator=op, eigenvalues=w, eigenvectors=vecs,
        psd_ok=bool(w[0] >= -tol), selfadjoint_residual=selfadjoint_resid,
    )


def _cos_like(kappa: float, t: np.ndarray) -> np.ndarray:
    if kappa > 1e-12:
        return np.cos(np.sqrt(kappa) * t)
    if kappa < -1e-12:
        return np.cosh(np.sqrt(-kappa) * t)
    return np.ones_like(t)


def _sin_like(kappa: float, t: np.ndarray) -> np.ndarray:
    if kappa > 1e-12:
        r = np.sqrt(kappa)
        return np.sin(r * t) / r
    if kappa < -1e-12:
        r = np.sqrt(-kappa)
        return np.sinh(r * t) / r
    return np.asarray(t, dtype=float)


def jacobi_field(sp: HomogeneousSpace, spectrum: JacobiSpectrum,
                 v0: np.ndarray, w0: np.ndarray, t) -> np.ndarray:
    """Closed-form Jacobi field along the geodesic of ``spectrum``.

    The field with initial value ``v0`` and initial derivative ``w0`` is
    expanded in the metric-orthonormal eigenbasis; each coefficient
    evolves by the circular, linear, or hyperbolic solution of
    ``f'' + kappa f = 0`` for its eigenvalue.  Valid in the parallel frame
    along the orbit, with ``t`` the arc length.

    Returns an array of tangent coordinates, one row per entry of ``t``
    (or a single vector for scalar ``t``).
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    g = sp.metric.gram
    cv = spectrum.eigenvectors.T @ g @ np.asarray(v0, dtype=float)
    cw = spectrum.eigenvectors.T @ g @ np.asarray(w0, dtype=float)
    out = np.zeros((t_arr.size, sp.dim))
    for i, kappa in enumerate(spectrum.eigenvalues):
        coeff = cv[i] * _cos_like(kappa, t_arr) + cw[i] * _sin_like(kappa, t_arr)
        out += np.outer(coeff, spectrum.eigenvectors[:, i])
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return out[0]
    return out


# ---------------------------------------------------------------------------
# augmentation by invariant fields from the other side
# ---------------------------------------------------------------------------

def augment_left_invariant(sp: HomogeneousSpace,
                           tol: float = DEFAULT_TOL) -> HomogeneousSpace:
    """Enlarge the Killing algebra of a group manifold by bi-invariant
    directions acting from the other side.

    Only applies to spaces with trivial isotropy (the algebra itself is
    the tangent space).  Directions whose adjoint is metric-skew generate
    flows by translation on the opposite side that are again isometries;
    they close under the opposite bracket and commute with the original
    fields.  The enlarged algebra keeps the original metric and gains an
    isotropy identifying the two actions at the base point.  When no such
    direction exists the space is returned unchanged.
    """
    if sp.dim_isotropy != 0:
        raise ValueError("augmentation needs trivial isotropy "
                         "(a group manifold presentation)")
    alg = sp.algebra
    n = alg.dim
    form = sp.eval_matrix.T @ sp.metric.gram @ sp.eval_matrix
    a = bi_invariant_directions(alg, form, tol)
    q = a.dim
    if q == 0:
        return sp

    structure = np.zeros((n + q, n + q, n + q))
    structure[:n, :n, :n] = alg.structure
    for r in range(q):
        for s in range(r + 1, q):
            w = -bracket(alg, a.basis[:, r], a.basis[:, s])
            coeff, res, _, _ = np.linalg.lstsq(a.basis, w, rcond=None)
            resid = float(np.linalg.norm(a.basis @ coeff - w))
            if resid > CHECK_TOL:
                raise RuntimeError("internal: bi-invariant directions do not "
                                   f"close under the bracket (residual {resid:.3e})")
            structure[n + r, n + s, n:] = coeff
            structure[n + s, n + r, n:] = -coeff
    labels = alg.basis_labels + tuple(f"op{r + 1}" for r in range(q))
    big = LieAlgebra(n + q, labels, structure,
                     convention_note=alg.convention_note
                     + "; opposite-side generators appended")

    iso = Subspace(n + q, np.vstack([a.basis, -np.eye(q)]))
    comp = Subspace(n + q, np.vstack([sp.m_basis, np.zeros((q, sp.dim))]))
    return HomogeneousSpace(big, iso, sp.metric, complement=comp,
                            label=(sp.label + " (augmented)") if sp.label
                            else "augmented", tol=sp.tol)


# ---------------------------------------------------------------------------
# closed orbit geodesics
# ---------------------------------------------------------------------------

def closed_geodesic_length(sp: HomogeneousSpace, representation: np.ndarray,
                           x: np.ndarray, tol: float = CHECK_TOL) -> float:
    """Length of the closed orbit geodesic generated by the field x.

    The period is that of the one-parameter group ``exp(t X)`` in the
    supplied matrix representation, found from the purely imaginary
    eigenvalue frequencies; the length is the period times the speed at
    the base point.  If the representation is a cover or quotient of the
    isometry group the period, and hence the length, refers to that group.

    Raises
    ------
    ValueError
        If the orbit is not a geodesic at the base point, the generator
        has eigenvalues off the imaginary axis (no periodic flow), the
        frequencies are incommensurable within ``1e-8``, or the field is
        in the kernel of the representation.
    """
    x = np.asarray(x, dtype=float)
    speed = sp.tangent_norm(sp.evaluate(x))
    if speed <= tol:
        raise ValueError("field evaluates to zero at the base point")
    drift = float(np.linalg.norm(sp.nabla_at_base(x) @ sp.evaluate(x)))
    if drift > tol * speed * speed:
        raise ValueError(f"orbit of the field is not a geodesic at the base "
                         f"point (residual {drift:.3e})")

    gen = np.einsum("i,ijk->jk", x, np.asarray(representation))
    scale = max(1.0, float(np.max(np.abs(gen))))
    eig = np.linalg.eigvals(gen)
    if float(np.max(np.abs(eig.real))) > tol * scale:
        raise ValueError("generator has eigenvalues off the imaginary axis; "
                         "the flow is not periodic")
    freqs = np.abs(eig.imag)
    freqs = freqs[freqs > tol * scale]
    if freqs.size == 0:
        raise ValueError("field is in the kernel of the representation; "
                         "no period is defined")
    freqs.sort()
    distinct = [freqs[0]]
    for f in freqs[1:]:
        if f - distinct[-1] > tol * scale:
            distinct.append(f)
    base = distinct[0]
    multiples = []
    for f in distinct:
        frac = Fraction(f / base).limit_denominator(10 ** 6)
        if abs(float(frac) - f / base) > 1e-8:
            raise ValueError(
                f"frequencies {base:.6g} and {f:.6g} are incommensurable; "
                f"the orbit does not close")
        multiples.append(frac)
    steps = math.lcm(*[fr.denominator for fr in multiples])
    winding = [steps * fr.numerator // fr.denominator for fr in multiples]
    steps //= math.gcd(*winding)
    period = 2.0 * math.pi * steps / base
    return period * speed
