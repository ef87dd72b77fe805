"""Catalog of strictly convex Bregman generators.

Each generator bundles a potential ``phi`` with its derivative ``u``, the
inverse of ``u``, the second derivative ``phi2``, the domain, and the
interval ``u`` maps the interior onto.  Divergences are always computed
from ``phi`` and ``u`` through the defining identity

    D(x, y) = phi(x) - phi(y) - (x - y) * u(y)

never from transcribed per-family divergence formulas; the closed forms
that appear in the test suite are evaluated there independently and act
as cross-checks.

Every family accepts affine offsets ``b`` and ``c`` turning ``phi`` into
``phi + b*x + c``.  The offsets shift ``u`` and its inverse but cancel in
every divergence, which is a tested invariant rather than an assumption.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import (
    ConjugateUnavailable,
    DimensionMismatch,
    DomainViolation,
    InvalidParams,
    InversionFailure,
    NoBracket,
    NoConvergence,
    UnknownFamily,
)
from .numerics import DEFAULT_TOL, Tolerance, solve_scalar

_CLAMP = 1e-12


@dataclass(frozen=True)
class Domain:
    """A real interval, open or closed at each finite end."""

    lo: float = -math.inf
    hi: float = math.inf
    lo_open: bool = True
    hi_open: bool = True

    def contains(self, x: float) -> bool:
        if not math.isfinite(x):
            return False
        if x < self.lo or (self.lo_open and x == self.lo):
            return False
        if x > self.hi or (self.hi_open and x == self.hi):
            return False
        return True

    def interior_contains(self, x: float) -> bool:
        return math.isfinite(x) and self.lo < x < self.hi

    def interior_seed(self) -> float:
        """A representative interior point, used to start bracket searches."""
        if math.isfinite(self.lo) and math.isfinite(self.hi):
            return 0.5 * (self.lo + self.hi)
        if math.isfinite(self.lo):
            return self.lo + 1.0
        if math.isfinite(self.hi):
            return self.hi - 1.0
        return 0.0


REAL_LINE = Domain()
POSITIVE = Domain(0.0, math.inf)
NONNEGATIVE = Domain(0.0, math.inf, lo_open=False)


@dataclass(frozen=True)
class Generator:
    """Scalar potential with derivatives and inverse gradient.

    ``u_inverse`` may be None, in which case inversion falls back to a
    bracketed root search over the domain (see :func:`invert_u`).
    ``u_image`` is the open interval ``u`` maps the domain interior onto;
    it doubles as the domain of the Legendre conjugate.
    """

    name: str
    domain: Domain
    u_image: Domain
    phi: Callable[[float], float]
    u: Callable[[float], float]
    phi2: Callable[[float], float]
    u_inverse: Callable[[float], float] | None = None
    params: Mapping[str, float] = field(default_factory=dict)

    @property
    def has_closed_inverse(self) -> bool:
        return self.u_inverse is not None


@dataclass(frozen=True)
class VectorGenerator:
    """Multivariate potential; not assumed separable."""

    name: str
    dim: int
    phi: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray]
    grad_inverse: Callable[[np.ndarray], np.ndarray] | None = None


def _assemble(name, params, domain, image_core, phi0, u0, phi20, uinv0, b, c):
    u_image = Domain(image_core[0] + b, image_core[1] + b)

    def phi(x: float) -> float:
        if not domain.contains(x):
            raise DomainViolation(f"{x} outside domain of {name}")
        return phi0(x) + b * x + c

    def u(x: float) -> float:
        if not domain.interior_contains(x):
            raise DomainViolation(f"{x} outside interior domain of {name}")
        return u0(x) + b

    def phi2(x: float) -> float:
        if not domain.interior_contains(x):
            raise DomainViolation(f"{x} outside interior domain of {name}")
        return phi20(x)

    u_inverse = None
    if uinv0 is not None:

        def u_inverse(y: float) -> float:
            if not u_image.interior_contains(y):
                raise DomainViolation(
                    f"{y} outside the gradient image of {name}"
                )
            return uinv0(y - b)

    return Generator(
        name=name,
        domain=domain,
        u_image=u_image,
        phi=phi,
        u=u,
        phi2=phi2,
        u_inverse=u_inverse,
        params=dict(params),
    )


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise InvalidParams(message)


def _squared_euclidean(b=0.0, c=0.0):
    return _assemble(
        "squared_euclidean",
        {"b": b, "c": c},
        REAL_LINE,
        (-math.inf, math.inf),
        lambda x: x * x,
        lambda x: 2.0 * x,
        lambda x: 2.0,
        lambda y: 0.5 * y,
        b,
        c,
    )


def _kullback_leibler(b=0.0, c=0.0):
    def phi0(x):
        # 0*log(0) taken as 0; the closed endpoint is only valid for phi.
        if x == 0.0:
            return 0.0
        return x * math.log(x) - x

    return _assemble(
        "kullback_leibler",
        {"b": b, "c": c},
        NONNEGATIVE,
        (-math.inf, math.inf),
        phi0,
        math.log,
        lambda x: 1.0 / x,
        math.exp,
        b,
        c,
    )


def _itakura_saito(b=0.0, c=0.0):
    return _assemble(
        "itakura_saito",
        {"b": b, "c": c},
        POSITIVE,
        (-math.inf, 0.0),
        lambda x: -math.log(x),
        lambda x: -1.0 / x,
        lambda x: 1.0 / (x * x),
        lambda y: -1.0 / y,
        b,
        c,
    )


def _amari_alpha(alpha, b=0.0, c=0.0):
    _require(-1.0 < alpha < 1.0, f"alpha must lie in (-1, 1), got {alpha}")
    k = 4.0 / (1.0 - alpha * alpha)
    e = 0.5 * (1.0 + alpha)
    return _assemble(
        "amari_alpha",
        {"alpha": alpha, "b": b, "c": c},
        POSITIVE,
        (-math.inf, k),
        lambda x: k * (x - x**e),
        lambda x: k * (1.0 - e * x ** (e - 1.0)),
        lambda x: x ** (0.5 * (alpha - 3.0)),
        lambda y: ((k - y) / (k * e)) ** (2.0 / (alpha - 1.0)),
        b,
        c,
    )


def _bregman_csiszar(alpha, b=0.0, c=0.0):
    _require(0.0 < alpha < 1.0, f"alpha must lie in (0, 1), got {alpha}")
    return _assemble(
        "bregman_csiszar",
        {"alpha": alpha, "b": b, "c": c},
        POSITIVE,
        (-math.inf, 1.0 / (1.0 - alpha)),
        lambda x: (-(x**alpha) + alpha * x - alpha + 1.0)
        / (alpha * (1.0 - alpha)),
        lambda x: (1.0 - x ** (alpha - 1.0)) / (1.0 - alpha),
        lambda x: x ** (alpha - 2.0),
        lambda y: (1.0 - (1.0 - alpha) * y) ** (1.0 / (alpha - 1.0)),
        b,
        c,
    )


def _arimoto(alpha, b=0.0, c=0.0):
    _require(0.0 < alpha < 1.0, f"alpha must lie in (0, 1), got {alpha}")
    half = 0.5 / (1.0 - alpha)

    def phi0(x):
        return half * ((x ** (1.0 / alpha) + 1.0) ** alpha - 2.0**alpha)

    def u0(x):
        t = x ** (1.0 / alpha)
        return half * (t / (1.0 + t)) ** (1.0 - alpha)

    def phi20(x):
        t = x ** (1.0 / alpha)
        return t ** (1.0 - 2.0 * alpha) * (1.0 + t) ** (alpha - 2.0) / (
            2.0 * alpha
        )

    def uinv0(y):
        s = (y / half) ** (1.0 / (1.0 - alpha))
        return (s / (1.0 - s)) ** alpha

    return _assemble(
        "arimoto",
        {"alpha": alpha, "b": b, "c": c},
        POSITIVE,
        (0.0, half),
        phi0,
        u0,
        phi20,
        uinv0,
        b,
        c,
    )


def _ces(sigma, a=None, b=0.0, c=0.0):
    _require(math.isfinite(sigma) and sigma not in (0.0, 1.0),
             f"sigma must be finite and outside {{0, 1}}, got {sigma}")
    q = 2.0 - 1.0 / sigma
    r = 1.0 - 1.0 / sigma
    _require(q != 0.0, f"degenerate exponent: sigma={sigma} gives 2 - 1/sigma = 0")
    if a is None:
        a = 1.0 if q * r > 0.0 else -1.0
    _require(a * q * r > 0.0,
             f"a={a} violates the convexity sign rule a*(2-1/sigma)*(1-1/sigma) > 0")
    image_core = (0.0, math.inf) if r > 0.0 else (-math.inf, 0.0)
    return _assemble(
        "ces",
        {"sigma": sigma, "a": a, "b": b, "c": c},
        POSITIVE,
        image_core,
        lambda x: a * x**q,
        lambda x: a * q * x**r,
        lambda x: a * q * r * x ** (r - 1.0),
        lambda y: (y / (a * q)) ** (1.0 / r),
        b,
        c,
    )


def _cobb_douglas(a_prime=1.0, b=0.0, c=0.0):
    _require(a_prime > 0.0, f"a_prime must be positive, got {a_prime}")
    return _assemble(
        "cobb_douglas",
        {"a_prime": a_prime, "b": b, "c": c},
        POSITIVE,
        (-math.inf, math.inf),
        lambda x: a_prime * x * math.log(x),
        lambda x: a_prime * (math.log(x) + 1.0),
        lambda x: a_prime / x,
        lambda y: math.exp(y / a_prime - 1.0),
        b,
        c,
    )


def _gem(theta=1.0, a_prime=1.0, d=0.0, b=0.0, c=0.0):
    _require(theta != 0.0 and math.isfinite(theta),
             f"theta must be finite and nonzero, got {theta}")
    _require(a_prime > 0.0, f"a_prime must be positive, got {a_prime}")
    image_core = (0.0, math.inf) if theta > 0.0 else (-math.inf, 0.0)
    return _assemble(
        "gem",
        {"theta": theta, "a_prime": a_prime, "d": d, "b": b, "c": c},
        REAL_LINE,
        image_core,
        lambda x: a_prime * math.exp(theta * x + d),
        lambda x: a_prime * theta * math.exp(theta * x + d),
        lambda x: a_prime * theta * theta * math.exp(theta * x + d),
        lambda y: (math.log(y / (a_prime * theta)) - d) / theta,
        b,
        c,
    )


_BUILDERS = {
    "squared_euclidean": _squared_euclidean,
    "kullback_leibler": _kullback_leibler,
    "itakura_saito": _itakura_saito,
    "amari_alpha": _amari_alpha,
    "bregman_csiszar": _bregman_csiszar,
    "arimoto": _arimoto,
    "ces": _ces,
    "cobb_douglas": _cobb_douglas,
    "gem": _gem,
}

FAMILY_NAMES = tuple(sorted(_BUILDERS))


def make_generator(family: str, **params: float) -> Generator:
    """Build a catalog generator by family name.

    Raises UnknownFamily for names outside the catalog and InvalidParams
    when a parameter is missing, unexpected, or out of range.
    """
    try:
        builder = _BUILDERS[family]
    except KeyError:
        raise UnknownFamily(
            f"unknown family {family!r}; known: {', '.join(FAMILY_NAMES)}"
        ) from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise InvalidParams(f"bad parameters for {family}: {exc}") from None


def linear_shift(gen: Generator, b: float = 0.0, c: float = 0.0) -> Generator:
    """Same family with ``phi`` replaced by ``phi + b*x + c``."""
    if gen.name not in _BUILDERS:
        raise UnknownFamily(f"{gen.name} is not a catalog family")
    params = dict(gen.params)
    params["b"] = params.get("b", 0.0) + b
    params["c"] = params.get("c", 0.0) + c
    return make_generator(gen.name, **params)


def generator_config(gen: Generator) -> dict:
    return {"family": gen.name, "params": dict(gen.params)}


def generator_from_config(config: dict) -> Generator:
    """Inverse of generator_config; rejects unknown keys."""
    if not isinstance(config, dict):
        raise InvalidParams("generator config must be a JSON object")
    extra = set(config) - {"family", "params"}
    if extra:
        raise InvalidParams(f"unknown config keys: {sorted(extra)}")
    if "family" not in config:
        raise InvalidParams("generator config requires a 'family' key")
    params = config.get("params") or {}
    if not isinstance(params, dict):
        raise InvalidParams("'params' must be a JSON object")
    return make_generator(config["family"], **params)


def divergence(gen: Generator, x: float, y: float) -> float:
    """The divergence of x from y under gen; second argument is the anchor.

    Values in [-1e-12, 0) arising from rounding are clamped to zero so
    non-negativity holds exactly downstream.
    """
    if not gen.domain.contains(x):
        raise DomainViolation(f"first argument {x} outside domain of {gen.name}")
    if not gen.domain.interior_contains(y):
        raise DomainViolation(
            f"second argument {y} outside interior domain of {gen.name}"
        )
    value = gen.phi(x) - gen.phi(y) - (x - y) * gen.u(y)
    if -_CLAMP <= value < 0.0:
        return 0.0
    return value


def divergence_vec(vgen: VectorGenerator, x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (vgen.dim,) or y.shape != (vgen.dim,):
        raise DimensionMismatch(
            f"expected vectors of length {vgen.dim}, got {x.shape} and {y.shape}"
        )
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise DomainViolation("non-finite coordinates")
    value = vgen.phi(x) - vgen.phi(y) - float((x - y) @ vgen.grad(y))
    if -_CLAMP <= value < 0.0:
        return 0.0
    return value


def quadratic_form_generator(matrix) -> VectorGenerator:
    """phi(x) = x' A x for a symmetric positive definite A."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParams(f"matrix must be square, got shape {a.shape}")
    if not np.allclose(a, a.T, atol=1e-12):
        raise InvalidParams("matrix must be symmetric")
    try:
        np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise InvalidParams("matrix must be positive definite") from None
    dim = a.shape[0]
    return VectorGenerator(
        name=f"quadratic_form_{dim}d",
        dim=dim,
        phi=lambda x: float(x @ a @ x),
        grad=lambda x: 2.0 * (a @ x),
        grad_inverse=lambda y: np.linalg.solve(2.0 * a, np.asarray(y, float)),
    )


def invert_u(gen: Generator, y: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """x with u(x) = y; closed form when available, else a root search."""
    if gen.u_inverse is not None:
        return gen.u_inverse(y)
    if not gen.u_image.interior_contains(y):
        raise DomainViolation(f"{y} outside the gradient image of {gen.name}")
    try:
        return solve_scalar(
            lambda x: gen.u(x) - y,
            gen.domain.interior_seed(),
            lo=gen.domain.lo,
            hi=gen.domain.hi,
            tol=tol,
            df=gen.phi2,
        )
    except (NoBracket, NoConvergence) as exc:
        raise InversionFailure(
            f"could not invert u of {gen.name} at {y}: {exc}"
        ) from exc


def legendre_conjugate(gen: Generator, tol: Tolerance = DEFAULT_TOL) -> Generator:
    """Generator of the convex conjugate potential.

    The conjugate evaluates y*x(y) - phi(x(y)) at the u-preimage x(y);
    its derivative is that preimage, so u and u_inverse swap roles and
    the domain becomes the image of u.  When gen has no closed-form
    inverse the preimage is found numerically; persistent failure
    surfaces as ConjugateUnavailable.
    """
    cdom = gen.u_image
    cimage = Domain(gen.domain.lo, gen.domain.hi)

    def preimage(y: float) -> float:
        if not cdom.interior_contains(y):
            raise DomainViolation(
                f"{y} outside domain of the conjugate of {gen.name}"
            )
        try:
            return invert_u(gen, y, tol)
        except InversionFailure as exc:
            raise ConjugateUnavailable(str(exc)) from exc

    def cphi(y: float) -> float:
        x = preimage(y)
        return y * x - gen.phi(x)

    def cphi2(y: float) -> float:
        return 1.0 / gen.phi2(preimage(y))

    def cuinv(x: float) -> float:
        return gen.u(x)

    return Generator(
        name=f"{gen.name}_conjugate",
        domain=cdom,
        u_image=cimage,
        phi=cphi,
        u=preimage,
        phi2=cphi2,
        u_inverse=cuinv,
        params=dict(gen.params),
    )


def duality_gap(
    gen: Generator, x: float, y: float, conjugate: Generator | None = None
) -> float:
    """|D(x, y) - D*(u(y), u(x))| with D* the conjugate divergence."""
    conj = conjugate if conjugate is not None else legendre_conjugate(gen)
    primal = divergence(gen, x, y)
    dual = divergence(conj, gen.u(y), gen.u(x))
    return abs(primal - dual)
