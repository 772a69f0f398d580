"""Command-line interface: classification, scans, optimization, self-checks.

Matrices are accepted either as four Pauli coefficients "c0,ax,ay,az"
(canonical form) or as eight reals "re00,im00,re01,im01,re10,im10,re11,im11"
(row-major complex entries). All angles are in radians. Every command is a
deterministic function of its configuration and seed.

Exit codes: 0 success, 1 usage error, 2 invariant/validation failure,
3 check-suite failure.
"""

from __future__ import annotations

import json
import math
import sys as _sys

import click
import numpy as np

from .backend import backend_name
from .canonical import (
    CommutingSystemError,
    ControlSystem,
    HADAMARD,
    phase_gate,
    special_time,
)
from .checks import run_all_checks
from .montecarlo import (
    SamplingConfig,
    default_alpha_grid,
    default_phi_w_grid,
    hadamard_scan,
    probability_map,
    write_map_csv,
    write_scan_csv,
)
from .optimize import AscentConfig, multistart
from .pauli import (
    IDENTITY,
    NonHermitianError,
    NonUnitaryError,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    check_unitary,
)
from .traps import classify


def parse_matrix(text: str) -> np.ndarray:
    """Parse a matrix flag value (4 Pauli coefficients or 8 reals)."""
    try:
        values = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise click.UsageError(f"could not parse matrix {text!r}: expected numbers")
    if len(values) == 4:
        c0, ax, ay, az = values
        return c0 * IDENTITY + ax * SIGMA_X + ay * SIGMA_Y + az * SIGMA_Z
    if len(values) == 8:
        re = np.array(values[0::2]).reshape(2, 2)
        im = np.array(values[1::2]).reshape(2, 2)
        return re + 1j * im
    raise click.UsageError(
        f"matrix {text!r} must have 4 (Pauli) or 8 (complex entries) numbers"
    )


def parse_gate(name: str, phi: float | None) -> np.ndarray:
    """Resolve --gate: hadamard | phase (uses --phi) | 8-number custom matrix."""
    if name == "hadamard":
        return HADAMARD
    if name == "phase":
        if phi is None:
            raise click.UsageError("--gate phase requires --phi")
        return phase_gate(phi)
    if "," in name:
        W = parse_matrix(name)
        return check_unitary(W)
    raise click.UsageError(
        f"unknown gate {name!r}: expected 'hadamard', 'phase', or 8 numbers"
    )


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        text = fh.read()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError:
        import yaml

        cfg = yaml.safe_load(text)
    if not isinstance(cfg, dict):
        raise click.UsageError(f"config file {path} must hold a mapping")
    return cfg


def _opt(flag_value, cfg: dict, key: str, default):
    """Flags override config-file values, which override defaults."""
    if flag_value is not None:
        return flag_value
    return cfg.get(key, default)


@click.group()
@click.option("--config", type=click.Path(exists=True), default=None,
              help="Optional JSON/YAML config file; flags override its values.")
@click.pass_context
def cli(ctx, config):
    """Control-landscape analysis for single-qubit gate generation."""
    ctx.obj = _load_config(config)


@cli.command("classify")
@click.option("--h0", default=None, help="Free Hamiltonian (default sigma_z).")
@click.option("--v", default=None, help="Interaction Hamiltonian (default sigma_x).")
@click.option("--gate", default=None, help="Target: hadamard | phase | 8 numbers.")
@click.option("--phi", type=float, default=None, help="Phase-gate angle (radians).")
@click.option("--t", type=float, default=None, help="Control horizon T.")
@click.pass_context
def cmd_classify(ctx, h0, v, gate, phi, t):
    """Print the trap-freedom verdict for a target gate as JSON."""
    cfg = ctx.obj
    system = ControlSystem(
        parse_matrix(_opt(h0, cfg, "h0", "0,0,0,1")),
        parse_matrix(_opt(v, cfg, "v", "0,1,0,0")),
    )
    W = parse_gate(_opt(gate, cfg, "gate", "hadamard"), _opt(phi, cfg, "phi", None))
    horizon = float(_opt(t, cfg, "t", math.pi))
    verdict = classify(system, W, horizon)
    click.echo(json.dumps(verdict.to_json_dict(), indent=2))


def _sampling_config(cfg, t, segments, samples, scale, seed, default_t):
    return SamplingConfig(
        horizon=float(_opt(t, cfg, "t", default_t)),
        n_segments=int(_opt(segments, cfg, "segments", 100)),
        n_samples=int(_opt(samples, cfg, "samples", 1000)),
        seed=int(_opt(seed, cfg, "seed", 0)),
        amplitude_scale=float(_opt(scale, cfg, "scale", 1.0)),
    )


@cli.command("scan-map")
@click.option("--t", type=float, default=None, help="Horizon T (default pi/3).")
@click.option("--alpha-grid", type=int, default=None, help="Points in alpha (default 64).")
@click.option("--phiw-grid", type=int, default=None, help="Points in phi_w (default 64).")
@click.option("--segments", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--scale", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", default=None, help="Output CSV path (default map.csv).")
@click.pass_context
def cmd_scan_map(ctx, t, alpha_grid, phiw_grid, segments, samples, scale, seed, out):
    """Scan J0 and P over the (alpha, phi_w) grid and write the map CSV."""
    cfg = ctx.obj
    sampling = _sampling_config(cfg, t, segments, samples, scale, seed, math.pi / 3.0)
    alphas = default_alpha_grid(int(_opt(alpha_grid, cfg, "alpha_grid", 64)))
    phiws = default_phi_w_grid(int(_opt(phiw_grid, cfg, "phiw_grid", 64)))
    pmap = probability_map(sampling.horizon, alphas, phiws, sampling)
    path = _opt(out, cfg, "out", "map.csv")
    write_map_csv(pmap, path)
    ia, ip = np.unravel_index(np.argmax(pmap.p), pmap.p.shape)
    click.echo(
        f"wrote {path}: {alphas.size}x{phiws.size} cells, backend={backend_name()}, "
        f"max P = {pmap.p[ia, ip]:.4f} at alpha={alphas[ia]:.6g}, phi_w={phiws[ip]:.6g} "
        f"(j0 there = {pmap.j0[ia, ip]:.4f})"
    )


@cli.command("scan-hadamard")
@click.option("--t", type=float, default=None, help="Horizon T (default pi/3).")
@click.option("--alpha-grid", type=int, default=None, help="Points in alpha (default 64).")
@click.option("--segments", type=int, default=None)
@click.option("--samples", type=int, default=None)
@click.option("--scale", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", default=None, help="Output CSV path (default scan.csv).")
@click.pass_context
def cmd_scan_hadamard(ctx, t, alpha_grid, segments, samples, scale, seed, out):
    """P(alpha) for the Hadamard target; writes the 1-d scan CSV."""
    cfg = ctx.obj
    sampling = _sampling_config(cfg, t, segments, samples, scale, seed, math.pi / 3.0)
    alphas = default_alpha_grid(int(_opt(alpha_grid, cfg, "alpha_grid", 64)))
    rows = hadamard_scan(sampling.horizon, alphas, sampling)
    path = _opt(out, cfg, "out", "scan.csv")
    write_scan_csv(rows, path)
    ps = [p for _, p in rows]
    click.echo(
        f"wrote {path}: {len(rows)} alphas, P in [{min(ps):.4f}, {max(ps):.4f}]"
    )


@cli.command("optimize")
@click.option("--h0", default=None)
@click.option("--v", default=None)
@click.option("--gate", default=None)
@click.option("--phi", type=float, default=None)
@click.option("--t", type=float, default=None)
@click.option("--starts", type=int, default=None, help="Random starts (default 20).")
@click.option("--segments", type=int, default=None)
@click.option("--step", type=float, default=None)
@click.option("--max-iters", type=int, default=None)
@click.option("--tol", type=float, default=None, help="Gradient tolerance.")
@click.option("--seed", type=int, default=None)
@click.option("--out", default=None, help="Write the JSON summary here instead of stdout.")
@click.pass_context
def cmd_optimize(ctx, h0, v, gate, phi, t, starts, segments, step, max_iters, tol, seed, out):
    """Multistart gradient ascent; prints a JSON summary."""
    cfg = ctx.obj
    system = ControlSystem(
        parse_matrix(_opt(h0, cfg, "h0", "0,0,0,1")),
        parse_matrix(_opt(v, cfg, "v", "0,1,0,0")),
    )
    W = parse_gate(_opt(gate, cfg, "gate", "hadamard"), _opt(phi, cfg, "phi", None))
    horizon = float(_opt(t, cfg, "t", special_time(system)))
    ascent = AscentConfig(
        step_size=float(_opt(step, cfg, "step", 0.1)),
        max_iters=int(_opt(max_iters, cfg, "max_iters", 1000)),
        grad_tolerance=float(_opt(tol, cfg, "tol", 1e-8)),
        n_segments=int(_opt(segments, cfg, "segments", 20)),
        seed=int(_opt(seed, cfg, "seed", 0)),
    )
    summary = multistart(system, W, horizon, int(_opt(starts, cfg, "starts", 20)), ascent)
    text = json.dumps(summary.to_json_dict(), indent=2)
    path = _opt(out, cfg, "out", None)
    if path is None:
        click.echo(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {path}: best J = {summary.best_j:.6f}")


@cli.command("check")
@click.option("--seed", type=int, default=None)
@click.option("--tol", type=float, default=None,
              help="Override every check tolerance (demonstration knob).")
@click.pass_context
def cmd_check(ctx, seed, tol):
    """Run the finite-difference and invariance property suites."""
    cfg = ctx.obj
    results = run_all_checks(
        seed=int(_opt(seed, cfg, "seed", 0)),
        tolerance_override=_opt(tol, cfg, "tol", None),
    )
    for result in results:
        click.echo(result.line())
    if not all(r.passed for r in results):
        raise _CheckFailure()


class _CheckFailure(Exception):
    pass


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except _CheckFailure:
        click.echo("check suite failed", err=True)
        return 3
    except (
        CommutingSystemError,
        NonHermitianError,
        NonUnitaryError,
        ValueError,
    ) as exc:
        click.echo(f"validation error: {exc}", err=True)
        return 2
    return 0


def entrypoint():  # console_scripts hook
    _sys.exit(main())


if __name__ == "__main__":
    entrypoint()
