"""Free bigraded-commutative algebras on declared generators.

A model is a finite list of generators with bidegrees, truncation
exponents and a conjugation pairing, together with assignments of the
two differentials on generators.  Monomials are exponent vectors in
declaration order; every sign in the engine is computed relative to
that canonical order, so results are reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .scalars import GaussianRational, ZERO, ONE

__all__ = [
    "GeneratorSpec", "ModelSpec", "Form", "DiagonalAction",
    "ModelError", "ModelMismatch",
]


class ModelError(ValueError):
    """Inconsistent model data (bidegrees, conjugation, d^2 != 0...)."""


class ModelMismatch(ModelError):
    """Operands belong to different models."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    bidegree: tuple          # (p, q)
    truncation: int          # g^truncation = 0; always 2 for odd generators
    conjugate: str           # name of the conjugate generator (self allowed)

    @property
    def degree(self):
        return self.bidegree[0] + self.bidegree[1]

    @property
    def odd(self):
        return self.degree % 2 == 1


class ModelSpec:
    """Validated bigraded model: generators + differentials on them.

    del_assignments / dbar_assignments map generator name -> Form (given
    as {monomial: scalar} dicts at construction time).
    """

    def __init__(self, name, complex_dimension, generators,
                 del_assignments=None, dbar_assignments=None,
                 parameters=None):
        self.name = name
        self.n = complex_dimension
        self.generators = list(generators)
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise ModelError("duplicate generator names")
        self.parameters = dict(parameters or {})
        self._basis_cache = {}
        self._validate_generators()
        self.del_assignments = self._coerce_assignments(del_assignments or {})
        self.dbar_assignments = self._coerce_assignments(dbar_assignments or {})
        self._validate_assignments()

    # -- validation ---------------------------------------------------

    def _validate_generators(self):
        for g in self.generators:
            p, q = g.bidegree
            if p < 0 or q < 0:
                raise ModelError("negative bidegree on %s" % g.name)
            if g.odd and g.truncation != 2:
                raise ModelError("odd generator %s must have truncation 2"
                                 % g.name)
            if g.truncation < 1:
                raise ModelError("truncation must be positive on %s" % g.name)
            if g.conjugate not in self.index:
                raise ModelError("unknown conjugate %r of %s"
                                 % (g.conjugate, g.name))
            gc = self.generators[self.index[g.conjugate]]
            if gc.conjugate != g.name:
                raise ModelError("conjugation of %s is not an involution"
                                 % g.name)
            if gc.bidegree != (q, p):
                raise ModelError("conjugate of %s has bidegree %s, want %s"
                                 % (g.name, gc.bidegree, (q, p)))
            if g.conjugate == g.name and p != q:
                raise ModelError("self-conjugate generator %s needs p = q"
                                 % g.name)
        vol = self.basis(self.n, self.n)
        if len(vol) != 1:
            raise ModelError("bidegree (%d,%d) space has dimension %d, not 1"
                             % (self.n, self.n, len(vol)))
        self.volume_monomial = vol[0]

    def _coerce_assignments(self, raw):
        out = {}
        for name, value in raw.items():
            if name not in self.index:
                raise ModelError("assignment on unknown generator %r" % name)
            form = value if isinstance(value, Form) else Form(self, value)
            if not form.is_zero():
                out[name] = form
        return out

    def _validate_assignments(self):
        for which, assignments, shift in (
                ("del", self.del_assignments, (1, 0)),
                ("dbar", self.dbar_assignments, (0, 1))):
            for name, form in assignments.items():
                g = self.generators[self.index[name]]
                want = (g.bidegree[0] + shift[0], g.bidegree[1] + shift[1])
                bid = form.bidegree()
                if bid is not None and bid != want:
                    raise ModelError(
                        "%s %s has bidegree %s, want %s"
                        % (which, name, bid, want))
        # conjugation compatibility: dbar(conj g) = conj(del g) and
        # del(conj g) = conj(dbar g)
        for g in self.generators:
            cname = g.conjugate
            lhs = self.dbar_assignments.get(cname, self.zero())
            rhs = self.del_assignments.get(g.name, self.zero()).conjugate()
            if not lhs.equals(rhs):
                raise ModelError(
                    "conjugation compatibility fails: dbar(%s) != conj(del %s)"
                    % (cname, g.name))

    # -- basic structure ----------------------------------------------

    def generator(self, name):
        return self.generators[self.index[name]]

    def monomial_bidegree(self, mono):
        p = q = 0
        for e, g in zip(mono, self.generators):
            if e:
                p += e * g.bidegree[0]
                q += e * g.bidegree[1]
        return (p, q)

    def monomial_degree(self, mono):
        p, q = self.monomial_bidegree(mono)
        return p + q

    def basis(self, p, q):
        """All truncation-respecting monomials of bidegree (p, q), in
        lexicographic order of exponent vectors."""
        key = (p, q)
        if key not in self._basis_cache:
            table = self._all_monomials()
            self._basis_cache[key] = table.get(key, [])
        return self._basis_cache[key]

    def _all_monomials(self):
        if not hasattr(self, "_mono_table"):
            table = {}
            ranges = [range(g.truncation) for g in self.generators]
            for exps in product(*ranges):
                table.setdefault(self.monomial_bidegree(exps), []).append(exps)
            for monos in table.values():
                monos.sort()
            self._mono_table = table
        return self._mono_table

    def bidegrees(self):
        """All (p, q) with a nonempty monomial basis, sorted."""
        return sorted(self._all_monomials())

    # -- form constructors --------------------------------------------

    def zero(self):
        return Form(self, {})

    def one(self):
        unit = tuple(0 for _ in self.generators)
        return Form(self, {unit: ONE})

    def gen(self, name):
        i = self.index[name]
        mono = tuple(1 if j == i else 0 for j in range(len(self.generators)))
        return Form(self, {mono: ONE})

    def monomial_form(self, mono, coeff=ONE):
        return Form(self, {tuple(mono): coeff})

    def volume_form(self):
        return self.monomial_form(self.volume_monomial)

    def form_from_names(self, names, coeff=ONE):
        """Wedge of named generators, e.g. ('p1','p2','q3')."""
        f = self.one() * coeff
        for name in names:
            f = f.wedge(self.gen(name))
        return f

    def pretty_monomial(self, mono, ascii_only=False):
        parts = []
        for e, g in zip(mono, self.generators):
            if not e:
                continue
            name = ("~" + g.name) if (ascii_only and _is_barred(g)) else g.name
            parts.append(name if e == 1 else "%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return "ModelSpec(%r, n=%d, %d generators)" % (
            self.name, self.n, len(self.generators))


def _is_barred(g):
    return g.name.endswith("_bar") or "̄" in g.name or "̅" in g.name


class Form:
    """Sparse form: mapping monomial -> nonzero scalar."""

    __slots__ = ("spec", "components")

    def __init__(self, spec, components=None):
        self.spec = spec
        comp = {}
        for mono, coeff in (components or {}).items():
            coeff = GaussianRational.of(coeff)
            if coeff:
                comp[tuple(mono)] = coeff
        self.components = comp

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.components

    def bidegree(self):
        """The common bidegree of all monomials, or None if mixed/zero."""
        bids = {self.spec.monomial_bidegree(m) for m in self.components}
        if len(bids) == 1:
            return bids.pop()
        return None

    def equals(self, other):
        self._check(other)
        return self.components == other.components

    def is_multiple_of(self, other):
        """True if self = c * other for some nonzero scalar c (or both 0)."""
        self._check(other)
        if self.is_zero() and other.is_zero():
            return True
        if self.is_zero() or other.is_zero():
            return False
        if set(self.components) != set(other.components):
            return False
        mono = next(iter(self.components))
        c = self.components[mono] / other.components[mono]
        return all(self.components[m] == c * other.components[m]
                   for m in self.components)

    def _check(self, other):
        if other.spec is not self.spec:
            raise ModelMismatch("forms live over different models")

    # -- linear structure ---------------------------------------------

    def __add__(self, other):
        self._check(other)
        comp = dict(self.components)
        for m, c in other.components.items():
            v = comp.get(m, ZERO) + c
            if v:
                comp[m] = v
            else:
                comp.pop(m, None)
        return Form(self.spec, comp)

    def __sub__(self, other):
        return self + (other * GaussianRational(-1))

    def __neg__(self):
        return self * GaussianRational(-1)

    def __mul__(self, scalar):
        scalar = GaussianRational.of(scalar)
        if not scalar:
            return self.spec.zero()
        return Form(self.spec,
                    {m: c * scalar for m, c in self.components.items()})

    __rmul__ = __mul__

    # -- multiplicative structure -------------------------------------

    def wedge(self, other):
        self._check(other)
        spec = self.spec
        out = {}
        for ma, ca in self.components.items():
            for mb, cb in other.components.items():
                mono, sign = _merge_monomials(spec, ma, mb)
                if mono is None:
                    continue
                c = ca * cb
                if sign < 0:
                    c = -c
                v = out.get(mono, ZERO) + c
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
        return Form(spec, out)

    def conjugate(self):
        spec = self.spec
        out = {}
        for mono, coeff in self.components.items():
            cmono, sign = _conjugate_monomial(spec, mono)
            c = coeff.conjugate()
            if sign < 0:
                c = -c
            v = out.get(cmono, ZERO) + c
            if v:
                out[cmono] = v
        return Form(spec, out)

    # -- coordinates --------------------------------------------------

    def coordinates(self, p, q):
        """Coefficient vector on the (p, q) monomial basis."""
        basis = self.spec.basis(p, q)
        index = _basis_index(self.spec, p, q)
        vec = [ZERO] * len(basis)
        for m, c in self.components.items():
            if self.spec.monomial_bidegree(m) != (p, q):
                raise ModelError("form has a component outside bidegree (%d,%d)"
                                 % (p, q))
            vec[index[m]] = c
        return vec

    def component_of_bidegree(self, p, q):
        return Form(self.spec,
                    {m: c for m, c in self.components.items()
                     if self.spec.monomial_bidegree(m) == (p, q)})

    def pretty(self, ascii_only=False):
        if not self.components:
            return "0"
        parts = []
        for m in sorted(self.components):
            c = self.components[m]
            mono = self.spec.pretty_monomial(m, ascii_only)
            cs = str(c)
            if mono == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-%s" % mono)
            elif ("+" in cs[1:]) or ("-" in cs[1:]):
                parts.append("(%s)*%s" % (cs, mono))
            else:
                parts.append("%s*%s" % (cs, mono))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "Form(%s)" % self.pretty(ascii_only=True)


def _basis_index(spec, p, q):
    key = ("idx", p, q)
    cache = spec._basis_cache
    if key not in cache:
        cache[key] = {m: i for i, m in enumerate(spec.basis(p, q))}
    return cache[key]


def _merge_monomials(spec, ma, mb):
    """Product of two canonical monomials: (monomial, sign) or (None, 0)."""
    gens = spec.generators
    merged = []
    for ea, eb, g in zip(ma, mb, gens):
        e = ea + eb
        if e >= g.truncation:
            return None, 0
        merged.append(e)
    # Koszul sign: each odd factor of mb passes the odd factors of ma that
    # sit at later generator positions.
    sign = 0
    odd_after = 0
    for k in range(len(gens) - 1, -1, -1):
        if gens[k].odd:
            if mb[k]:
                sign += odd_after * mb[k]
            if ma[k]:
                odd_after += ma[k]
    return tuple(merged), (-1 if sign % 2 else 1)


def _conjugate_monomial(spec, mono):
    """Conjugate a canonical monomial: permute generators and re-sort.

    Returns (monomial, sign); the sign counts odd-odd transpositions
    needed to bring the conjugated factor sequence back to declaration
    order.
    """
    gens = spec.generators
    # factor sequence of conjugated monomial, in the order inherited from
    # the original: each factor is the conjugate generator index
    seq = []
    for i, e in enumerate(mono):
        if e:
            j = spec.index[gens[i].conjugate]
            seq.extend([j] * e)
    # bubble sort counting odd-odd swaps
    sign = 0
    seq = list(seq)
    for a in range(len(seq)):
        for b in range(len(seq) - 1 - a):
            if seq[b] > seq[b + 1]:
                if gens[seq[b]].odd and gens[seq[b + 1]].odd:
                    sign += 1
                seq[b], seq[b + 1] = seq[b + 1], seq[b]
    out = [0] * len(gens)
    for j in seq:
        out[j] += 1
        if out[j] >= gens[j].truncation:
            # conjugate generator pairs share truncations, so this
            # cannot happen for a valid monomial
            raise ModelError("conjugation violates a truncation")
    return tuple(out), (-1 if sign % 2 else 1)


@dataclass(frozen=True)
class DiagonalAction:
    """Diagonal action on generators by unit scalars (+-1, +-i)."""

    weights: tuple  # GaussianRational per generator, declaration order

    @classmethod
    def from_map(cls, spec, mapping):
        units = {GaussianRational(1), GaussianRational(-1),
                 GaussianRational(0, 1), GaussianRational(0, -1)}
        ws = []
        for g in spec.generators:
            if g.name not in mapping:
                raise ModelError("action missing generator %s" % g.name)
            w = GaussianRational.of(mapping[g.name])
            if w not in units:
                raise ModelError("action scalar on %s is not a unit" % g.name)
            ws.append(w)
        for g, w in zip(spec.generators, ws):
            wc = ws[spec.index[g.conjugate]]
            if wc != w.conjugate():
                raise ModelError(
                    "action scalar of conj %s must be conjugated" % g.name)
        return cls(tuple(ws))

    def monomial_weight(self, mono):
        w = ONE
        for e, s in zip(mono, self.weights):
            for _ in range(e):
                w = w * s
        return w

    def is_invariant(self, mono):
        return self.monomial_weight(mono) == ONE


def invariant_submodel(spec, action):
    """Monomial filter for the weight-1 subcomplex of a diagonal action.

    Validates that both differentials are equivariant (so they restrict
    to the invariant span) and returns a predicate on monomials.
    """
    for which, assignments in (("del", spec.del_assignments),
                               ("dbar", spec.dbar_assignments)):
        for name, form in assignments.items():
            i = spec.index[name]
            w = action.weights[i]
            for mono in form.components:
                if action.monomial_weight(mono) != w:
                    raise ModelError(
                        "%s is not equivariant on generator %s"
                        % (which, name))
    return action.is_invariant
