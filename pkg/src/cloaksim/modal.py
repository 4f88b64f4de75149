"""Per-mode transfer coefficients and the interface transmission solve.

For each multipole degree n the tangential matching across the coated-ball
interface couples the exterior coefficients (gamma, eta, c, d) to the
interior ones (alpha, beta) and the source data (p, q).  The solve splits
into two independent 2x2 chains per polarisation; every product is kept in
log-magnitude form so degrees up to 60 at inner radii down to 1e-6 stay
finite.

Closed-form limits of the solve as the inner radius shrinks (beta0, the
leading d coefficient, and the interface-layer strength sigma) live here
too, next to the finite-radius machinery they describe.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

from . import specfun
from .errors import ConfigError, DomainError, ResonanceError
from .geometry import CloakParams
from .scaled import ScaledComplex, scaled_real

# a denominator whose magnitude falls below this fraction of its largest
# term is treated as resonant (frequency inadmissible)
DENOM_FLOOR = 1e-12
# floor on |j_n(k omega)| guarding the interior-limit formulas
INTERIOR_FLOOR = 1e-10


@dataclass(frozen=True)
class TransferSet:
    """Interface transfer ratios for one degree n (log-magnitude form).

    t1, t2 (with t1p, t2p) form the chain driven by (gamma, p); t3, t4
    (with t3p, t4p) the chain driven by (eta, q).  dn and dnp are the two
    2x2 determinants the ratios share.
    """

    n: int
    params: CloakParams
    t1: ScaledComplex
    t2: ScaledComplex
    t3: ScaledComplex
    t4: ScaledComplex
    t1p: ScaledComplex
    t2p: ScaledComplex
    t3p: ScaledComplex
    t4p: ScaledComplex
    dn: ScaledComplex
    dnp: ScaledComplex

    def as_complex(self) -> dict:
        return {k: getattr(self, k).to_complex()
                for k in ("t1", "t2", "t3", "t4", "t1p", "t2p", "t3p", "t4p",
                          "dn", "dnp")}


@dataclass(frozen=True)
class ModeCoeffs:
    """Solved field coefficients of one mode, kept in log-magnitude form."""

    gamma: ScaledComplex
    eta: ScaledComplex
    c: ScaledComplex
    d: ScaledComplex
    alpha: ScaledComplex
    beta: ScaledComplex

    def as_complex(self) -> dict:
        return {k: getattr(self, k).to_complex()
                for k in ("gamma", "eta", "c", "d", "alpha", "beta")}


@dataclass(frozen=True)
class SourceCoeffs:
    """Multipole table of the interior radiating source.

    entries maps (n, m) -> (p, q); r1 is the declared support radius of the
    generating current.
    """

    entries: dict
    r1: float

    def __post_init__(self):
        for (n, m), (p, q) in self.entries.items():
            if n < 1 or abs(m) > n:
                raise DomainError(f"invalid mode ({n},{m}) in source table")
        if not 0.0 < self.r1 < 1.0:
            raise DomainError(f"r1 must be in (0,1), got {self.r1}")

    def modes(self):
        return sorted(self.entries)

    def max_degree(self) -> int:
        return max((n for n, _ in self.entries), default=0)


@dataclass(frozen=True)
class BoundaryCoeffs:
    """Tangential boundary data table: (n, m) -> (f1, f2)."""

    entries: dict = field(default_factory=dict)

    def modes(self):
        return sorted(self.entries)

    def max_degree(self) -> int:
        return max((n for n, _ in self.entries), default=0)


@dataclass(frozen=True)
class ModalSolution:
    """All solved modes for one parameter set plus the data that produced them."""

    params: CloakParams
    source: SourceCoeffs
    boundary: BoundaryCoeffs
    modes: dict  # (n, m) -> ModeCoeffs
    n_max: int

    def mode_items(self):
        return sorted(self.modes.items())


def _ladder_values(n: int, t: float):
    lad = specfun.bessel_ladder(n, t)
    return lad.jn(n), lad.hn(n), lad.riccati_j(n), lad.riccati_h(n)


def transfer_coeffs(n: int, params: CloakParams) -> TransferSet:
    """Transfer ratios of degree n for the given scenario.

    Raises:
        ResonanceError: a shared 2x2 determinant is annihilated by
            cancellation (inadmissible frequency).
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    om, rho, k = params.omega, params.rho, params.k
    se = scaled_real(params.eps0 ** -0.5)
    sm = scaled_real(params.mu0 ** -0.5)
    jr, hr, jjr, hhr = _ladder_values(n, om * rho)
    jk, hk, jjk, hhk = _ladder_values(n, k * om)

    dn_a = sm * rho * hr * jjk
    dn_b = se * k * hhr * jk
    dn = dn_a - dn_b
    dnp_a = se * rho * hr * jjk
    dnp_b = sm * k * hhr * jk
    dnp = dnp_a - dnp_b
    for name, den, t1_, t2_ in (("dn", dn, dn_a, dn_b),
                                ("dnp", dnp, dnp_a, dnp_b)):
        scale = max(t1_.log_mag, t2_.log_mag)
        if den.is_zero or den.log_mag - scale < math.log(DENOM_FLOOR):
            raise ResonanceError(n, name)

    # cross-product identity: J_n h_n - H_n j_n = -i/t, reused by both
    # primed ratios; the 1/k on t1p balances the eps/mu weights of its chain
    cross_k = jjk * hk - hhk * jk
    t1 = (se * k * jjr * jk - sm * rho * jr * jjk) / dn
    t2 = (k * rho * jjr * hr - k * rho * jr * hhr) / dn
    t3 = (sm * k * jjr * jk - se * rho * jr * jjk) / dnp
    t4 = (rho * jjr * hr - rho * jr * hhr) / dnp
    t1p = cross_k / (k * dn)
    t2p = (se * k * hk * hhr - sm * rho * hhk * hr) / dn
    t3p = cross_k / dnp
    t4p = (sm * k * hk * hhr - se * rho * hhk * hr) / dnp
    return TransferSet(n=n, params=params, t1=t1, t2=t2, t3=t3, t4=t4,
                       t1p=t1p, t2p=t2p, t3p=t3p, t4p=t4p, dn=dn, dnp=dnp)


def solve_mode(n: int, p, q, f1, f2, params: CloakParams,
               transfer: TransferSet | None = None) -> ModeCoeffs:
    """Solve one mode for source data (p, q) and boundary data (f1, f2).

    Returns the six field coefficients; m enters only through the data, so
    the same call serves every order of a given degree.

    Raises:
        ResonanceError: interface determinant or exterior-boundary
            denominator below floor.
    """
    ts = transfer if transfer is not None else transfer_coeffs(n, params)
    om = params.omega
    j2, h2, jj2, hh2 = _ladder_values(n, 2.0 * om)

    den_g = ts.t1 * h2 + j2
    den_e = ts.t3 * hh2 + jj2
    scale_g = max((ts.t1 * h2).log_mag, j2.log_mag)
    scale_e = max((ts.t3 * hh2).log_mag, jj2.log_mag)
    if den_g.is_zero or den_g.log_mag - scale_g < math.log(DENOM_FLOOR):
        raise ResonanceError(n, "t1*h_n(2w) + j_n(2w)")
    if den_e.is_zero or den_e.log_mag - scale_e < math.log(DENOM_FLOOR):
        raise ResonanceError(n, "t3*H_n(2w) + J_n(2w)")

    p_s = ScaledComplex.from_complex(p)
    q_s = ScaledComplex.from_complex(q)
    f1_s = ScaledComplex.from_complex(f1)
    f2_s = ScaledComplex.from_complex(f2)

    gamma = (f1_s - p_s * ts.t1p * h2) / den_g
    eta = (f2_s * 2.0 - ts.t3p * q_s * hh2) / den_e
    c = ts.t1 * gamma + ts.t1p * p_s
    alpha = ts.t2 * gamma + ts.t2p * p_s
    d = ts.t3 * eta + ts.t3p * q_s
    beta = ts.t4 * eta + ts.t4p * q_s
    return ModeCoeffs(gamma=gamma, eta=eta, c=c, d=d, alpha=alpha, beta=beta)


def system_residuals(n: int, p, q, f1, f2, params: CloakParams,
                     coeffs: ModeCoeffs) -> list:
    """Relative residuals of the six matching equations for one mode.

    Each residual is |lhs - rhs| over the largest participating term, so a
    value near machine epsilon certifies the solve.
    """
    om, rho, k = params.omega, params.rho, params.k
    se = scaled_real(params.eps0 ** -0.5)
    sm = scaled_real(params.mu0 ** -0.5)
    jr, hr, jjr, hhr = _ladder_values(n, om * rho)
    jk, hk, jjk, hhk = _ladder_values(n, k * om)
    j2, h2, jj2, hh2 = _ladder_values(n, 2.0 * om)
    g, e = coeffs.gamma, coeffs.eta
    c, d = coeffs.c, coeffs.d
    al, be = coeffs.alpha, coeffs.beta
    p_s, q_s = ScaledComplex.from_complex(p), ScaledComplex.from_complex(q)
    f1_s, f2_s = ScaledComplex.from_complex(f1), ScaledComplex.from_complex(f2)

    equations = [
        ([c * h2, g * j2], f1_s),
        ([d * hh2, e * jj2], f2_s * 2.0),
        ([c * hr * rho, g * jr * rho], se * (al * jk + p_s * hk)),
        ([d * hhr, e * jjr], se * (be * jjk + q_s * hhk)),
        ([c * hhr * k, g * jjr * k], sm * (al * jjk + p_s * hhk)),
        ([d * hr * rho, e * jr * rho], sm * k * (be * jk + q_s * hk)),
    ]
    out = []
    for terms, rhs in equations:
        lhs = terms[0] + terms[1]
        resid = lhs - rhs
        scale = max([t.log_mag for t in terms] + [rhs.log_mag])
        if scale == float("-inf"):
            out.append(0.0 if resid.is_zero else math.inf)
        elif resid.is_zero:
            out.append(0.0)
        else:
            out.append(math.exp(min(resid.log_mag - scale, 700.0)))
    return out


# -- closed-form limits -------------------------------------------------------


def limit_coeffs(n: int, q, params: CloakParams):
    """Vanishing-regularisation limits for the q-driven chain of degree n.

    Returns:
        (beta0, d_prefactor, sigma):
        beta0: limit of beta, equal to -h_n(k w)/j_n(k w) * q;
        d_prefactor: D with d ~ D * rho^(n+1) as rho -> 0;
        sigma: strength multiplying phi(1) in the interface-layer limit of
            the exterior normal pairing, -i mu0^(1/2) q / (k^2 w j_n(k w)).

    Raises:
        ResonanceError: |j_n(k omega)| below the interior floor.
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    k, om, mu0 = params.k, params.omega, params.mu0
    jk, hk, jjk, hhk = _ladder_values(n, k * om)
    jk_c = jk.to_complex().real
    if abs(jk_c) < INTERIOR_FLOOR:
        raise ResonanceError(n, "j_n(k omega)", abs(jk_c))
    q = complex(q)
    beta0 = -hk.to_complex() / jk_c * q
    sigma = -1j * math.sqrt(mu0) * q / (k ** 2 * om * jk_c)
    # leading coefficient kept in log form: the Gamma factor alone would
    # underflow doubles for large n even though downstream ratios are O(1)
    pref = (ScaledComplex.from_log(
        math.log(2.0 * math.sqrt(math.pi)) - math.lgamma(n + 0.5)
        + (n + 1) * math.log(om / 2.0), 1j)
        * (jjk * hk - hhk * jk)
        * math.sqrt(mu0) / (k * n) / jk_c * q)
    return beta0, pref, sigma


def sigma_uncollapsed(n: int, q, params: CloakParams) -> complex:
    """Interface-layer strength evaluated without the cross-product shortcut.

    S_n^2 mu0^(1/2) [J_n h_n - H_n j_n](k w) / (k n(n+1) j_n(k w)) * q, kept
    as the raw combination; agrees with the collapsed sigma to rounding.
    """
    k, om, mu0 = params.k, params.omega, params.mu0
    jk, hk, jjk, hhk = _ladder_values(n, k * om)
    jk_c = jk.to_complex().real
    if abs(jk_c) < INTERIOR_FLOOR:
        raise ResonanceError(n, "j_n(k omega)", abs(jk_c))
    s2 = n * (n + 1)
    cross = (jjk * hk - hhk * jk).to_complex()
    return s2 * math.sqrt(mu0) * cross / (k * n * (n + 1) * jk_c) * complex(q)


def truncation_order(source: SourceCoeffs, params: CloakParams,
                     tol: float) -> int:
    """Smallest N whose tail S_n^2 |q| |h_n(k w r1)| sums below tol.

    The weight matches the term size of the normal-component series on the
    support sphere, so dropping degrees above N perturbs pairings by < tol.
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    t = params.k * params.omega * source.r1
    weights = {}
    for (n, m), (p, q) in sorted(source.entries.items()):
        _, h, _, _ = _ladder_values(n, t)
        w = n * (n + 1) * abs(q) * h.magnitude()
        weights[(n, m)] = w
    degrees = sorted({n for n, _ in weights})
    for cand in [0] + degrees:
        tail = sum(w for (n, _), w in weights.items() if n > cand)
        if tail < tol:
            return cand
    return max(degrees, default=0)


def check_decay_certificate(source: SourceCoeffs, params: CloakParams) -> None:
    """Warn when the tail of S_n^2 |q||h_n(k w r1)| is not decaying."""
    t = params.k * params.omega * source.r1
    by_degree = {}
    for (n, m), (p, q) in source.entries.items():
        _, h, _, _ = _ladder_values(n, t)
        w = n * (n + 1) * abs(q) * h.magnitude()
        by_degree[n] = max(by_degree.get(n, 0.0), w)
    degrees = sorted(by_degree)
    if len(degrees) >= 2 and by_degree[degrees[-1]] > by_degree[degrees[-2]]:
        warnings.warn(
            "source table tail is growing: "
            f"degree {degrees[-1]} term exceeds degree {degrees[-2]} term; "
            "truncation error is not certified", stacklevel=2)


def solve_source(source: SourceCoeffs, boundary: BoundaryCoeffs | None,
                 params: CloakParams, tol: float = 1e-12) -> ModalSolution:
    """Solve every mode carried by the source/boundary tables.

    Modes above the truncation degree are dropped; boundary-only modes are
    always kept.
    """
    boundary = boundary or BoundaryCoeffs()
    n_max = truncation_order(source, params, tol)
    n_max = max(n_max, boundary.max_degree())
    keys = sorted(set(source.entries) | set(boundary.entries))
    transfer_cache = {}
    modes = {}
    for (n, m) in keys:
        if n > n_max:
            continue
        p, q = source.entries.get((n, m), (0j, 0j))
        f1, f2 = boundary.entries.get((n, m), (0j, 0j))
        if n not in transfer_cache:
            transfer_cache[n] = transfer_coeffs(n, params)
        modes[(n, m)] = solve_mode(n, p, q, f1, f2, params,
                                   transfer=transfer_cache[n])
    return ModalSolution(params=params, source=source, boundary=boundary,
                         modes=modes, n_max=n_max)


# -- JSON tables --------------------------------------------------------------

_SOURCE_FIELDS = {"n", "m", "p_re", "p_im", "q_re", "q_im"}
_BOUNDARY_FIELDS = {"n", "m", "f1_re", "f1_im", "f2_re", "f2_im"}


def _parse_rows(rows, allowed, kind):
    if not isinstance(rows, list):
        raise ConfigError(f"{kind} table must be a list of row objects")
    entries = {}
    for row in rows:
        if not isinstance(row, dict):
            raise ConfigError(f"{kind} row must be an object, got {type(row).__name__}")
        unknown = set(row) - allowed
        if unknown:
            raise ConfigError(f"unknown fields in {kind} row: {sorted(unknown)}")
        missing = {"n", "m"} - set(row)
        if missing:
            raise ConfigError(f"{kind} row missing fields: {sorted(missing)}")
        n, m = int(row["n"]), int(row["m"])
        if (n, m) in entries:
            raise ConfigError(f"duplicate mode ({n},{m}) in {kind} table")
        entries[(n, m)] = row
    return entries


def parse_source_table(rows, r1: float) -> SourceCoeffs:
    """Source table from JSON rows {n, m, p_re, p_im, q_re, q_im}."""
    raw = _parse_rows(rows, _SOURCE_FIELDS, "source")
    entries = {}
    for (n, m), row in raw.items():
        p = complex(float(row.get("p_re", 0.0)), float(row.get("p_im", 0.0)))
        q = complex(float(row.get("q_re", 0.0)), float(row.get("q_im", 0.0)))
        entries[(n, m)] = (p, q)
    return SourceCoeffs(entries=entries, r1=r1)


def parse_boundary_table(rows) -> BoundaryCoeffs:
    """Boundary table from JSON rows {n, m, f1_re, f1_im, f2_re, f2_im}."""
    raw = _parse_rows(rows, _BOUNDARY_FIELDS, "boundary")
    entries = {}
    for (n, m), row in raw.items():
        f1 = complex(float(row.get("f1_re", 0.0)), float(row.get("f1_im", 0.0)))
        f2 = complex(float(row.get("f2_re", 0.0)), float(row.get("f2_im", 0.0)))
        entries[(n, m)] = (f1, f2)
    return BoundaryCoeffs(entries=entries)


def load_source_table(path, r1: float) -> SourceCoeffs:
    with open(path, encoding="utf-8") as fh:
        return parse_source_table(json.load(fh), r1)


def load_boundary_table(path) -> BoundaryCoeffs:
    with open(path, encoding="utf-8") as fh:
        return parse_boundary_table(json.load(fh))
