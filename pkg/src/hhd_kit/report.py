"""Field specifications, decomposition reports and their file formats.

Input is one JSON document.  Matrices are arrays of rows; planar polynomials
are maps from ``"i,j"`` (degrees in ``x`` and ``y``) to real coefficients.
Complex numbers in reports are ``[re, im]`` pairs, complex potentials lists of
``[m, k, re, im]`` for the monomial ``z**m zbar**k``.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .linear_hhd import (
    LinearHhd,
    RiccatiError,
    RiccatiReport,
    SolverOptions,
    solve_riccati,
    symmetric_split,
)
from .matrix_core import as_matrix, max_abs
from .planar_hhd import (
    NoStrictDecomposition,
    PlanarHhd,
    QuadHomField,
    complex_potential,
    quadratic_condition,
    solve_quadratic,
    strict_orthogonality_defect,
)
from .sde_bridge import SdeDecomposition, SdeError, equivalence_condition
from .stability import (
    Grid,
    VdpCaseStudy,
    gamma_samples,
    nullcline_samples,
    sample_level_sets,
    vdp_matrix,
    wdot_sign_grid,
)
from .wirtinger import RealPoly2, ZPoly

EXIT_OK, EXIT_INPUT, EXIT_NONEXISTENT = 0, 1, 2
STRICT_TOL = 1e-8
KINDS = ("linear", "planar_poly", "quad_homogeneous", "vdp")
QUAD_KEYS = ("p1", "q1", "r1", "p2", "q2", "r2")


class SpecError(ValueError):
    """Malformed field specification (exit code 1)."""


# ---- encoding helpers ----------------------------------------------------


def matrix_to_json(m) -> list[list[float]]:
    return [[float(v) + 0.0 for v in row] for row in np.asarray(m)]


def realpoly_to_json(p: RealPoly2) -> dict[str, float]:
    return {f"{i},{j}": float(c) for (i, j), c in p.sorted_terms()}


def realpoly_from_json(obj: dict) -> RealPoly2:
    terms: dict = {}
    for key, c in obj.items():
        try:
            i, j = (int(s) for s in key.split(","))
        except ValueError as e:
            raise SpecError(f"bad monomial key {key!r}; expected 'i,j'") from e
        if i < 0 or j < 0:
            raise SpecError(f"negative degree in monomial key {key!r}")
        if not isinstance(c, (int, float)) or not math.isfinite(c):
            raise SpecError(f"coefficient for {key!r} must be a finite real number")
        terms[(i, j)] = terms.get((i, j), 0.0) + float(c)
    return RealPoly2(terms)


def zpoly_to_json(w: ZPoly) -> list[list]:
    return [[m, k, float(c.real), float(c.imag)] for (m, k), c in w.sorted_terms()]


def zpoly_from_json(obj: list) -> ZPoly:
    return ZPoly({(int(m), int(k)): complex(re, im) for m, k, re, im in obj})


# ---- input ----------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    matrix: list | None = None
    f_terms: dict | None = None
    g_terms: dict | None = None
    mu: float | None = None
    coefficients: dict | None = None
    p: list | None = None
    d: list | None = None

    @classmethod
    def from_json(cls, obj: Any) -> "FieldSpec":
        if not isinstance(obj, dict):
            raise SpecError("field specification must be a JSON object")
        kind = obj.get("kind")
        if kind not in KINDS:
            raise SpecError(f"kind must be one of {KINDS}, got {kind!r}")
        allowed = {
            "linear": {"matrix", "p", "d"},
            "vdp": {"mu", "p", "d"},
            "planar_poly": {"f_terms", "g_terms"},
            "quad_homogeneous": {"coefficients"},
        }[kind]
        extra = set(obj) - allowed - {"kind"}
        if extra:
            raise SpecError(f"unexpected fields for kind {kind!r}: {sorted(extra)}")
        spec = cls(
            kind=kind,
            matrix=obj.get("matrix"),
            f_terms=obj.get("f_terms"),
            g_terms=obj.get("g_terms"),
            mu=obj.get("mu"),
            coefficients=_quad_coefficients(obj["coefficients"]) if "coefficients" in obj else None,
            p=obj.get("p"),
            d=obj.get("d"),
        )
        spec.validate()
        return spec

    def validate(self) -> None:
        try:
            if self.kind == "linear":
                if self.matrix is None:
                    raise SpecError("linear field needs 'matrix'")
                as_matrix(self.matrix)
            elif self.kind == "vdp":
                if not isinstance(self.mu, (int, float)) or not math.isfinite(self.mu):
                    raise SpecError("vdp field needs a finite real 'mu'")
            elif self.kind == "planar_poly":
                if self.f_terms is None or self.g_terms is None:
                    raise SpecError("planar_poly field needs 'f_terms' and 'g_terms'")
                realpoly_from_json(self.f_terms)
                realpoly_from_json(self.g_terms)
            elif self.coefficients is None:
                raise SpecError("quad_homogeneous field needs 'coefficients'")
            n = len(self.linear_matrix()) if self.kind in ("linear", "vdp") else None
            for name in ("p", "d"):
                if getattr(self, name) is not None:
                    as_matrix(getattr(self, name), n)
        except SpecError:
            raise
        except (ValueError, TypeError) as e:
            raise SpecError(str(e)) from e

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def linear_matrix(self) -> np.ndarray:
        if self.kind == "vdp":
            return vdp_matrix(float(self.mu))
        return as_matrix(self.matrix)

    def planar_polys(self) -> tuple[RealPoly2, RealPoly2]:
        return realpoly_from_json(self.f_terms), realpoly_from_json(self.g_terms)

    def quad_field(self) -> QuadHomField:
        return QuadHomField(**self.coefficients)


def _quad_coefficients(obj) -> dict:
    if isinstance(obj, dict):
        if set(obj) != set(QUAD_KEYS):
            raise SpecError(f"coefficients must have keys {QUAD_KEYS}")
        vals = [obj[k] for k in QUAD_KEYS]
    elif isinstance(obj, list) and len(obj) == 6:
        vals = obj
    else:
        raise SpecError("coefficients must be six numbers p1,q1,r1,p2,q2,r2")
    if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in vals):
        raise SpecError("coefficients must be finite real numbers")
    return {k: float(v) for k, v in zip(QUAD_KEYS, vals)}


def load_spec(path: str | Path) -> FieldSpec:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise SpecError(f"cannot read field specification: {e}") from e
    return FieldSpec.from_json(obj)


# ---- reports ----------------------------------------------------------------


@dataclass
class DecompositionReport:
    input: dict
    parts: dict
    diagnostics: dict
    strictly_orthogonal: bool
    failure_reason: str | None = None
    exit_code: int = EXIT_OK

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> "DecompositionReport":
        return cls(**obj)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "DecompositionReport":
        return cls.from_dict(json.loads(text))


def _linear_parts(d: LinearHhd) -> dict:
    return {"P": matrix_to_json(d.p), "H": matrix_to_json(d.h), "A": matrix_to_json(d.a)}


def _planar_parts(d: PlanarHhd) -> dict:
    return {
        "V": realpoly_to_json(d.v),
        "H": realpoly_to_json(d.h),
        "W": zpoly_to_json(d.w),
    }


def _planar_diagnostics(d: PlanarHhd) -> dict:
    return {
        "defect_max_abs": strict_orthogonality_defect(d).max_abs(),
        "reconstruction_error": d.reconstruction_error(),
    }


def _given_hhd(spec: FieldSpec, a: np.ndarray) -> LinearHhd:
    d = LinearHhd.from_p(a, spec.p)
    try:
        d.check()
    except ValueError as e:
        raise SpecError(f"supplied P does not give an HHD: {e}") from e
    return d


def decompose(spec: FieldSpec, opts: SolverOptions | None = None, strict: bool = False) -> DecompositionReport:
    opts = opts or SolverOptions()
    echo = spec.to_json()
    if spec.kind in ("linear", "vdp"):
        a = spec.linear_matrix()
        try:
            d, rep = solve_riccati(a, opts)
            reason = None
        except RiccatiError as e:
            d = symmetric_split(a)
            rep = RiccatiReport.measure(a, d.p, 0, "symmetric-split fallback")
            reason = str(e)
        strict_ok = reason is None and rep.orthogonality_norm <= STRICT_TOL
        return DecompositionReport(
            input=echo,
            parts=_linear_parts(d),
            diagnostics=asdict(rep),
            strictly_orthogonal=strict_ok,
            failure_reason=reason,
            exit_code=EXIT_OK if reason is None else EXIT_NONEXISTENT,
        )
    if spec.kind == "planar_poly":
        d = complex_potential(*spec.planar_polys())
        diag = _planar_diagnostics(d)
        strict_ok = diag["defect_max_abs"] <= 1e-10
        reason = None
        if strict and not strict_ok:
            reason = "integrated complex potential is not strictly orthogonal"
        return DecompositionReport(
            input=echo,
            parts=_planar_parts(d),
            diagnostics=diag,
            strictly_orthogonal=strict_ok,
            failure_reason=reason,
            exit_code=EXIT_NONEXISTENT if reason else EXIT_OK,
        )
    q = spec.quad_field()
    value = quadratic_condition(q)
    try:
        d = solve_quadratic(q)
        reason = None
    except NoStrictDecomposition as e:
        d = complex_potential(*q.polys())
        reason = str(e)
    diag = _planar_diagnostics(d) | {"condition_value": value}
    return DecompositionReport(
        input=echo,
        parts=_planar_parts(d),
        diagnostics=diag,
        strictly_orthogonal=reason is None,
        failure_reason=reason,
        exit_code=EXIT_OK if reason is None else EXIT_NONEXISTENT,
    )


def sde_report(spec: FieldSpec, dmat=None, opts: SolverOptions | None = None) -> DecompositionReport:
    """SDE decomposition ``F = -(D + Q)U`` matching an HHD of a linear field.

    The HHD is ``spec.p`` when given, otherwise the strictly orthogonal one
    found by :func:`solve_riccati`.  ``D`` defaults to the identity.
    """
    if spec.kind not in ("linear", "vdp"):
        raise SpecError("sde needs a linear (or vdp) field")
    a = spec.linear_matrix()
    n = len(a)
    if dmat is None:
        dmat = spec.d
    dmat = np.eye(n) if dmat is None else _as_spec_matrix(dmat, n)
    echo = spec.to_json() | {"d": matrix_to_json(dmat)}
    if spec.p is not None:
        d = _given_hhd(spec, a)
    else:
        try:
            d, _ = solve_riccati(a, opts or SolverOptions())
        except RiccatiError as e:
            return DecompositionReport(
                input=echo,
                parts={},
                diagnostics={},
                strictly_orthogonal=False,
                failure_reason=f"no strictly orthogonal HHD: {e}",
                exit_code=EXIT_NONEXISTENT,
            )
    parts = _linear_parts(d)
    diag = {"orthogonality_norm": max_abs(d.orthogonality_matrix())}
    strict_ok = diag["orthogonality_norm"] <= STRICT_TOL
    try:
        q = equivalence_condition(dmat, d)
    except SdeError as e:
        return DecompositionReport(
            input=echo,
            parts=parts,
            diagnostics=diag,
            strictly_orthogonal=strict_ok,
            failure_reason=f"no SDE decomposition corresponds to this HHD: {e}",
            exit_code=EXIT_NONEXISTENT,
        )
    u = np.linalg.solve(dmat, d.p)
    u = (u + u.T) / 2
    s = SdeDecomposition.build(dmat, q, u)
    diag |= {
        "sde_residual": max_abs(s.f - a),
        "trace_QU": float(np.trace(q @ u)),
    }
    parts |= {"D": matrix_to_json(dmat), "Q": matrix_to_json(q), "U": matrix_to_json(u)}
    return DecompositionReport(
        input=echo, parts=parts, diagnostics=diag, strictly_orthogonal=strict_ok
    )


def _as_spec_matrix(m, n):
    try:
        return as_matrix(m, n)
    except (ValueError, TypeError) as e:
        raise SpecError(f"bad D matrix: {e}") from e


# ---- Van der Pol case study output ---------------------------------------------


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with path.open("w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def write_vdp_casestudy(mu: float, grid: Grid, levels: Sequence[float], outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    study = VdpCaseStudy(mu, grid)
    written = []

    contours = sample_level_sets(study.w, levels, grid)
    path = outdir / "levelsets.csv"
    _write_csv(
        path,
        ["level", "polyline", "vertex", "x", "y"],
        (
            (c.level, ci, vi, x, y)
            for ci, c in enumerate(contours)
            for vi, (x, y) in enumerate(c.points)
        ),
    )
    written.append(path)

    gam = gamma_samples(mu, grid.xmax) if mu > 0 and grid.xmax > study.c0 else np.empty((0, 2))
    path = outdir / "gamma.csv"
    _write_csv(path, ["x", "gamma"], gam)
    written.append(path)

    nul = nullcline_samples(mu, grid.xmax) if mu != 0 and grid.xmax > 1 else np.empty((0, 2))
    path = outdir / "nullcline.csv"
    _write_csv(path, ["x", "y"], nul)
    written.append(path)

    xs, ys, wdot = wdot_sign_grid(mu, grid)
    path = outdir / "wdot_sign.csv"
    _write_csv(
        path,
        ["ix", "iy", "x", "y", "wdot", "sign"],
        (
            (ix, iy, xs[ix], ys[iy], wdot[iy, ix], int(np.sign(wdot[iy, ix])))
            for iy in range(len(ys))
            for ix in range(len(xs))
        ),
    )
    written.append(path)

    path = outdir / "overlay.svg"
    path.write_text(_svg_overlay(grid, contours, gam, nul, xs, ys, wdot))
    written.append(path)

    path = outdir / "report.json"
    summary = {
        "mu": mu,
        "c0": study.c0,
        "P": matrix_to_json(study.p),
        "levels": [float(v) for v in levels],
        "grid": asdict(grid),
        "files": [p.name for p in written],
    }
    path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    written.append(path)
    return written


def _svg_overlay(grid: Grid, contours, gam, nul, xs, ys, wdot, size: int = 600) -> str:
    from skimage.measure import find_contours

    sx = size / (grid.xmax - grid.xmin)
    sy = size / (grid.ymax - grid.ymin)

    def pts(arr):
        keep = [
            (x, y)
            for x, y in arr
            if grid.xmin <= x <= grid.xmax and grid.ymin <= y <= grid.ymax
        ]
        return " ".join(f"{(x - grid.xmin) * sx:.3f},{(grid.ymax - y) * sy:.3f}" for x, y in keep)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white" stroke="black"/>',
    ]
    dx = (grid.xmax - grid.xmin) / (grid.nx - 1)
    dy = (grid.ymax - grid.ymin) / (grid.ny - 1)
    for rc in find_contours(wdot, 0.0):
        arr = np.column_stack([grid.xmin + rc[:, 1] * dx, grid.ymin + rc[:, 0] * dy])
        lines.append(f'<polyline class="wdot-zero" points="{pts(arr)}" fill="none" stroke="blue"/>')
    for c in contours:
        lines.append(
            f'<polyline class="level" data-level="{c.level!r}" points="{pts(c.points)}" '
            'fill="none" stroke="red" stroke-dasharray="6,4"/>'
        )
    if len(gam):
        lines.append(f'<polyline class="gamma" points="{pts(gam)}" fill="none" stroke="blue" stroke-width="2"/>')
    if len(nul):
        lines.append(
            f'<polyline class="nullcline" points="{pts(nul)}" fill="none" stroke="blue" '
            'stroke-dasharray="3,3"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
