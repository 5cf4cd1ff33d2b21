"""Differentials, Hodge star and harmonic spaces on a bigraded model.

The engine carries two fully independent routes to every cohomology
dimension: kernels of the harmonic (Laplacian-style) systems for a given
inner product, and quotient dimensions ker/im computed without any inner
product.  Tests compare the two everywhere.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .linalg import Matrix, Subspace, kernel_basis, solve
from .model import Form, ModelError
from .scalars import GaussianRational, ZERO, ONE

THEORIES = ("dolbeault", "conj_dolbeault", "bott_chern", "aeppli")


class AssemblyError(ModelError):
    """d^2 != 0 or a non-restricting differential."""


class NotClosedError(ValueError):
    """Input form violates the closedness precondition of a theory."""


def apply_derivation(spec, assignments, form):
    """Extend a generator assignment to a graded derivation."""
    out = spec.zero()
    gens = spec.generators
    for mono, coeff in form.components.items():
        parity = 0
        for i, e in enumerate(mono):
            if e:
                target = assignments.get(gens[i].name)
                if target is not None:
                    left = list(mono[:i]) + [e - 1] + [0] * (len(gens) - i - 1)
                    right = [0] * (i + 1) + list(mono[i + 1:])
                    sign_parity = parity + (e - 1) * (1 if gens[i].odd else 0)
                    c = coeff * e
                    if sign_parity % 2:
                        c = -c
                    term = spec.monomial_form(left, c).wedge(target)
                    term = term.wedge(spec.monomial_form(right))
                    out = out + term
                parity += e * (1 if gens[i].odd else 0)
    return out


class InnerProduct:
    """Diagonal Hermitian metric: positive rational weight per monomial.

    Default declares the canonical monomial basis orthonormal; for the
    Lie-algebra models this is the invariant metric with orthonormal
    coframe.
    """

    def __init__(self, weights=None):
        self.weights = {}
        for mono, w in (weights or {}).items():
            w = Fraction(w)
            if w <= 0:
                raise ModelError("inner-product weight must be positive")
            self.weights[tuple(mono)] = w

    def weight(self, mono):
        return self.weights.get(tuple(mono), Fraction(1))


class HarmonicBasis:
    """Basis of a harmonic space for one theory and bidegree."""

    __slots__ = ("theory", "bidegree", "forms")

    def __init__(self, theory, bidegree, forms):
        self.theory = theory
        self.bidegree = bidegree
        self.forms = forms

    @property
    def dim(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __repr__(self):
        return "HarmonicBasis(%s, %s, dim=%d)" % (
            self.theory, self.bidegree, self.dim)


class CohomologyTable:
    """Per-bidegree dimensions for all theories plus Betti numbers."""

    def __init__(self, model_name, n, h_dbar, h_del, h_bc, h_a, betti):
        self.model_name = model_name
        self.n = n
        self.h_dbar = h_dbar
        self.h_del = h_del
        self.h_bc = h_bc
        self.h_a = h_a
        self.betti = betti

    def to_dict(self):
        grid = lambda h: [[h.get((p, q), 0) for q in range(self.n + 1)]
                          for p in range(self.n + 1)]
        return {
            "model": self.model_name,
            "n": self.n,
            "h_dbar": grid(self.h_dbar),
            "h_del": grid(self.h_del),
            "h_bc": grid(self.h_bc),
            "h_a": grid(self.h_a),
            "betti": list(self.betti),
        }


class HodgeEngine:
    """Assembled differentials + harmonic-space computations for a model.

    monomial_filter restricts to a subcomplex spanned by a subset of
    monomials (used for invariant submodels); the restriction is
    validated at assembly time.
    """

    def __init__(self, spec, inner_product=None, monomial_filter=None):
        self.spec = spec
        self.ip = inner_product or InnerProduct()
        self.filter = monomial_filter
        self._basis = {}
        self._matrix = {}
        self._harmonic = {}
        self._dim = {}
        if monomial_filter is not None and not monomial_filter(spec.volume_monomial):
            raise AssemblyError("volume monomial is outside the subcomplex")
        self._validate_squares()

    # -- bases ---------------------------------------------------------

    def basis(self, p, q):
        key = (p, q)
        if key not in self._basis:
            monos = self.spec.basis(p, q)
            if self.filter is not None:
                monos = [m for m in monos if self.filter(m)]
            self._basis[key] = monos
        return self._basis[key]

    def total_basis(self, k):
        """Monomials of total degree k as (p, q, monomial) triples."""
        out = []
        for p in range(0, self.spec.n + 1):
            q = k - p
            if 0 <= q <= self.spec.n:
                out.extend((p, q, m) for m in self.basis(p, q))
        return out

    def weights(self, p, q):
        return [self.ip.weight(m) for m in self.basis(p, q)]

    # -- matrices ------------------------------------------------------

    def _derive(self, which, form):
        assignments = (self.spec.del_assignments if which == "del"
                       else self.spec.dbar_assignments)
        return apply_derivation(self.spec, assignments, form)

    def matrix(self, which, p, q):
        """Matrix of del/dbar from (p, q) into the shifted bidegree."""
        key = (which, p, q)
        if key not in self._matrix:
            dp, dq = (1, 0) if which == "del" else (0, 1)
            src = self.basis(p, q)
            dst = self.basis(p + dp, q + dq)
            index = {m: i for i, m in enumerate(dst)}
            mat = Matrix(len(dst), len(src))
            for j, mono in enumerate(src):
                image = self._derive(which, self.spec.monomial_form(mono))
                for m, c in image.components.items():
                    if m not in index:
                        raise AssemblyError(
                            "%s image leaves the subcomplex at %s"
                            % (which, mono))
                    mat.data[index[m]][j] = c
            self._matrix[key] = mat
        return self._matrix[key]

    def ddbar_matrix(self, p, q):
        """del dbar from (p, q) to (p+1, q+1)."""
        return self.matrix("del", p, q + 1).matmul(self.matrix("dbar", p, q))

    def adjoint_matrix(self, which, p, q):
        """Adjoint of del/dbar mapping (p, q) down a bidegree."""
        dp, dq = (1, 0) if which == "del" else (0, 1)
        sp, sq = p - dp, q - dq
        if sp < 0 or sq < 0:
            return Matrix(0, len(self.basis(p, q)))
        fwd = self.matrix(which, sp, sq)  # (sp,sq) -> (p,q)
        return self._weighted_adjoint(fwd, (sp, sq), (p, q))

    def ddbar_adjoint_matrix(self, p, q):
        if p < 1 or q < 1:
            return Matrix(0, len(self.basis(p, q)))
        fwd = self.ddbar_matrix(p - 1, q - 1)
        return self._weighted_adjoint(fwd, (p - 1, q - 1), (p, q))

    def _weighted_adjoint(self, fwd, src_bid, dst_bid):
        """W_src^-1 fwd^H W_dst: adjoint in the weighted inner products."""
        adj = fwd.conj_transpose()
        wsrc = self.weights(*src_bid)
        wdst = self.weights(*dst_bid)
        out = Matrix(adj.rows, adj.cols)
        for i, row in enumerate(adj.data):
            inv = GaussianRational(1 / wsrc[i])
            for j, a in row.items():
                out.data[i][j] = inv * a * GaussianRational(wdst[j])
        return out

    def total_matrix(self, k):
        """d = del + dbar from total degree k to k + 1."""
        key = ("total", k)
        if key in self._matrix:
            return self._matrix[key]
        src = self.total_basis(k)
        dst = self.total_basis(k + 1)
        index = {(p, q, m): i for i, (p, q, m) in enumerate(dst)}
        mat = Matrix(len(dst), len(src))
        for j, (p, q, mono) in enumerate(src):
            for which, dp, dq in (("del", 1, 0), ("dbar", 0, 1)):
                image = self._derive(which, self.spec.monomial_form(mono))
                for m, c in image.components.items():
                    mat.data[index[(p + dp, q + dq, m)]][j] = c
        self._matrix[key] = mat
        return mat

    def _validate_squares(self):
        for g in self.spec.generators:
            f = self.spec.gen(g.name)
            for label, value in (
                    ("del^2", self._derive("del", self._derive("del", f))),
                    ("dbar^2", self._derive("dbar", self._derive("dbar", f))),
                    ("del dbar + dbar del",
                     self._derive("del", self._derive("dbar", f))
                     + self._derive("dbar", self._derive("del", f)))):
                if not value.is_zero():
                    raise AssemblyError(
                        "%s != 0 on generator %s (bidegree %s): %s"
                        % (label, g.name, g.bidegree, value.pretty(True)))

    # -- star ----------------------------------------------------------

    def star(self, form):
        """Conjugate-linear Hodge star for the diagonal inner product."""
        spec = self.spec
        out = spec.zero()
        vol = spec.volume_monomial
        for mono, coeff in form.components.items():
            comp = tuple(v - e for v, e in zip(vol, mono))
            pairing = spec.monomial_form(mono).wedge(spec.monomial_form(comp))
            s = pairing.components[vol]  # +-1, never zero
            c = coeff.conjugate() * GaussianRational(self.ip.weight(mono)) / s
            out = out + spec.monomial_form(comp, c)
        return out

    def _star_then(self, whiches, p, q):
        """Matrix K with: (whiches o star)(a) = 0  <=>  K a = 0.

        star is conjugate-linear, so the columns built from basis
        monomials get conjugated to give a genuinely linear system.
        """
        src = self.basis(p, q)
        n = self.spec.n
        dp = sum(1 for w in whiches if w == "del")
        dq = len(whiches) - dp
        dst = self.basis(n - p + dp, n - q + dq)
        index = {m: i for i, m in enumerate(dst)}
        mat = Matrix(len(dst), len(src))
        for j, mono in enumerate(src):
            image = self.star(self.spec.monomial_form(mono))
            for w in whiches:
                image = self._derive(w, image)
            for m, c in image.components.items():
                mat.data[index[m]][j] = c.conjugate()
        return mat

    # -- harmonic spaces -----------------------------------------------

    def _kernel_conditions(self, theory, p, q, use_star):
        # with the conjugate-linear star, X* is proportional to *X* for
        # X in {del, dbar, del dbar}, so the star-based kernel condition
        # uses the SAME operator after star
        if theory == "dolbeault":
            if use_star:
                return [self.matrix("dbar", p, q), self._star_then(["dbar"], p, q)]
            return [self.matrix("dbar", p, q), self.adjoint_matrix("dbar", p, q)]
        if theory == "conj_dolbeault":
            if use_star:
                return [self.matrix("del", p, q), self._star_then(["del"], p, q)]
            return [self.matrix("del", p, q), self.adjoint_matrix("del", p, q)]
        if theory == "bott_chern":
            base = [self.matrix("del", p, q), self.matrix("dbar", p, q)]
            if use_star:
                return base + [self._star_then(["dbar", "del"], p, q)]
            return base + [self.ddbar_adjoint_matrix(p, q)]
        if theory == "aeppli":
            base = [self.ddbar_matrix(p, q)]
            if use_star:
                return base + [self._star_then(["del"], p, q),
                               self._star_then(["dbar"], p, q)]
            return base + [self.adjoint_matrix("del", p, q),
                           self.adjoint_matrix("dbar", p, q)]
        raise ValueError("unknown theory %r" % theory)

    def harmonic_space(self, theory, p, q):
        """Exact kernel basis; the star-based and adjoint-based systems
        are both computed and must agree."""
        key = (theory, p, q)
        if key not in self._harmonic:
            conds = self._kernel_conditions(theory, p, q, use_star=True)
            stacked = conds[0]
            for m in conds[1:]:
                stacked = stacked.stack(m)
            ker = kernel_basis(stacked)
            conds2 = self._kernel_conditions(theory, p, q, use_star=False)
            stacked2 = conds2[0]
            for m in conds2[1:]:
                stacked2 = stacked2.stack(m)
            ker2 = kernel_basis(stacked2)
            if not ker.equals(ker2):
                raise AssemblyError(
                    "star-based and adjoint-based %s harmonic spaces "
                    "disagree at (%d,%d)" % (theory, p, q))
            basis = self.basis(p, q)
            forms = [Form(self.spec,
                          {m: c for m, c in zip(basis, v) if c})
                     for v in ker.basis]
            self._harmonic[key] = HarmonicBasis(theory, (p, q), forms)
        return self._harmonic[key]

    def de_rham_harmonic(self, k):
        key = ("de_rham", k)
        if key not in self._harmonic:
            d = self.total_matrix(k)
            src = self.total_basis(k)
            if k >= 1:
                prev = self.total_matrix(k - 1)
                wsrc = [self.ip.weight(m) for (_, _, m) in self.total_basis(k - 1)]
                wdst = [self.ip.weight(m) for (_, _, m) in src]
                adj = prev.conj_transpose()
                dstar = Matrix(adj.rows, adj.cols)
                for i, row in enumerate(adj.data):
                    inv = GaussianRational(1 / wsrc[i])
                    for j, a in row.items():
                        dstar.data[i][j] = inv * a * GaussianRational(wdst[j])
                stacked = d.stack(dstar)
            else:
                stacked = d
            ker = kernel_basis(stacked)
            forms = [Form(self.spec,
                          {m: c for (_, _, m), c in zip(src, v) if c})
                     for v in ker.basis]
            self._harmonic[key] = HarmonicBasis("de_rham", k, forms)
        return self._harmonic[key]

    def is_harmonic(self, theory, form):
        """Re-check the defining kernel equations on an explicit form."""
        if form.is_zero():
            return True
        bid = form.bidegree()
        if bid is None:
            return False
        p, q = bid
        vec = self._coords(form, p, q)
        for m in self._kernel_conditions(theory, p, q, use_star=True):
            if any(c for c in m.mul_vec(vec)):
                return False
        return True

    def is_de_rham_harmonic(self, form):
        if form.is_zero():
            return True
        ks = {self.spec.monomial_degree(m) for m in form.components}
        if len(ks) != 1:
            return False
        k = ks.pop()
        space = self.de_rham_harmonic(k)
        sub = self._total_subspace(space, k)
        return sub.contains(self._total_coords(form, k))

    # -- quotient dimensions (the inner-product-free oracle) -----------

    def cohomology_dim(self, theory, p, q):
        key = ("dim", theory, p, q)
        if key in self._dim:
            return self._dim[key]
        if theory == "dolbeault":
            closed = kernel_basis(self.matrix("dbar", p, q)).dim
            exact = self.matrix("dbar", p, q - 1).rank() if q >= 1 else 0
        elif theory == "conj_dolbeault":
            closed = kernel_basis(self.matrix("del", p, q)).dim
            exact = self.matrix("del", p - 1, q).rank() if p >= 1 else 0
        elif theory == "bott_chern":
            stacked = self.matrix("del", p, q).stack(self.matrix("dbar", p, q))
            closed = kernel_basis(stacked).dim
            exact = (self.ddbar_matrix(p - 1, q - 1).rank()
                     if p >= 1 and q >= 1 else 0)
        elif theory == "aeppli":
            closed = kernel_basis(self.ddbar_matrix(p, q)).dim
            parts = []
            if p >= 1:
                parts.append(self.matrix("del", p - 1, q))
            if q >= 1:
                parts.append(self.matrix("dbar", p, q - 1))
            if parts:
                joined = parts[0]
                for m in parts[1:]:
                    joined = joined.hstack(m)
                exact = joined.rank()
            else:
                exact = 0
        else:
            raise ValueError("unknown theory %r" % theory)
        self._dim[key] = closed - exact
        return self._dim[key]

    def betti(self, k):
        key = ("betti", k)
        if key not in self._dim:
            closed = kernel_basis(self.total_matrix(k)).dim
            exact = self.total_matrix(k - 1).rank() if k >= 1 else 0
            self._dim[key] = closed - exact
        return self._dim[key]

    # -- classes -------------------------------------------------------

    def _coords(self, form, p, q):
        basis = self.basis(p, q)
        index = {m: i for i, m in enumerate(basis)}
        vec = [ZERO] * len(basis)
        for m, c in form.components.items():
            if m not in index:
                raise ModelError("form outside the (%d,%d) subcomplex basis"
                                 % (p, q))
            vec[index[m]] = c
        return vec

    def _total_coords(self, form, k):
        src = self.total_basis(k)
        index = {m: i for i, (_, _, m) in enumerate(src)}
        vec = [ZERO] * len(src)
        for m, c in form.components.items():
            vec[index[m]] = c
        return vec

    def _total_subspace(self, space, k):
        return Subspace(len(self.total_basis(k)),
                        [self._total_coords(f, k) for f in space.forms])

    def class_of(self, form, theory):
        """Coordinates of the harmonic projection in the harmonic basis.

        Checks the theory's closedness precondition, projects, and
        verifies that the residual is exact in the theory's sense.
        """
        bid = form.bidegree()
        if bid is None:
            raise NotClosedError("form is not bidegree-homogeneous")
        p, q = bid
        vec = self._coords(form, p, q)
        self._check_closed(theory, p, q, vec)
        space = self.harmonic_space(theory, p, q)
        sub = Subspace(len(vec), [self._coords(f, p, q) for f in space.forms])
        w = self.weights(p, q)
        proj = linalg.orthogonal_project(sub, vec, w)
        residual = linalg.vec_sub(vec, proj)
        if not self._residual_exact(theory, p, q, residual):
            raise AssemblyError(
                "harmonic decomposition failed for %s at (%d,%d)"
                % (theory, p, q))
        coords = sub.coordinates(proj)
        return coords

    def _check_closed(self, theory, p, q, vec):
        if theory == "dolbeault":
            conds = [self.matrix("dbar", p, q)]
        elif theory == "conj_dolbeault":
            conds = [self.matrix("del", p, q)]
        elif theory == "bott_chern":
            conds = [self.matrix("del", p, q), self.matrix("dbar", p, q)]
        elif theory == "aeppli":
            conds = [self.ddbar_matrix(p, q)]
        else:
            raise ValueError("unknown theory %r" % theory)
        for m in conds:
            if any(c for c in m.mul_vec(vec)):
                raise NotClosedError(
                    "form is not %s-closed at (%d,%d)" % (theory, p, q))

    def _residual_exact(self, theory, p, q, residual):
        if linalg.vec_is_zero(residual):
            return True
        if theory == "dolbeault":
            m = self.matrix("dbar", p, q - 1) if q >= 1 else Matrix(len(residual), 0)
        elif theory == "conj_dolbeault":
            m = self.matrix("del", p - 1, q) if p >= 1 else Matrix(len(residual), 0)
        elif theory == "bott_chern":
            m = (self.ddbar_matrix(p - 1, q - 1)
                 if p >= 1 and q >= 1 else Matrix(len(residual), 0))
        else:  # aeppli
            parts = []
            if p >= 1:
                parts.append(self.matrix("del", p - 1, q))
            if q >= 1:
                parts.append(self.matrix("dbar", p, q - 1))
            if not parts:
                return False
            m = parts[0]
            for x in parts[1:]:
                m = m.hstack(x)
        return solve(m, residual) is not None

    # -- tables --------------------------------------------------------

    def cohomology_table(self):
        n = self.spec.n
        h_dbar, h_del, h_bc, h_a = {}, {}, {}, {}
        for p in range(n + 1):
            for q in range(n + 1):
                for table, theory in ((h_dbar, "dolbeault"),
                                      (h_del, "conj_dolbeault"),
                                      (h_bc, "bott_chern"),
                                      (h_a, "aeppli")):
                    d = self.cohomology_dim(theory, p, q)
                    if d:
                        table[(p, q)] = d
        betti = [self.betti(k) for k in range(2 * n + 1)]
        return CohomologyTable(self.spec.name, n, h_dbar, h_del, h_bc, h_a,
                               betti)
