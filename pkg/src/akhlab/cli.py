"""Command-line interface: every subsystem as a subcommand with JSON config,
CSV/JSON artifacts, an integrity manifest, and optional SVG plots.

    akhlab eval            closed-form profiles and parameter invariants
    akhlab residual        fourth-order operator residual on the breather
    akhlab verify-appendix exact-arithmetic proof of the 15 coefficient identities
    akhlab conserved       M, E, F, H time-invariance along the closed form
    akhlab evolve          split-step evolution with trajectory serialization
    akhlab experiment      qdecay | instability | mi | divergence

Configuration comes from defaults, then an optional --config JSON file,
then explicit flags; unknown config keys are rejected (a silent typo in a
tolerance name would invalidate experiment claims). Every run writes a
manifest listing each produced file with its sha256 plus the verdict
table. Numbers are serialized with 17 significant digits so reruns with
the same config and seed are byte-identical; plots embed no timestamps.
Exit status: 0 all verdicts pass, 1 a verdict failed (failure report on
disk), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .breather import (
    breather_field,
    derive_params,
    natural_grid,
    q_field,
    stokes_field,
)
from .experiments import (
    breather_perturbation_divergence,
    instability_report,
    mi_growth_rate,
    q_decay_scan,
    random_band_limited,
    stokes_deficit_perturbation,
)
from .functionals import functional_report
from .solver import SolverConfig, evolve
from .spectral import SampledField, l2_norm
from .variational import residual_report, verify_coefficients


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _write_csv(outdir: Path, name: str, header: list[str], rows: list[tuple]) -> Path:
    path = outdir / name
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _write_json(outdir: Path, name: str, obj) -> Path:
    path = outdir / name
    path.write_text(
        json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    return path


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _save_plot(outdir: Path, name: str, draw) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    draw(ax)
    fig.tight_layout()
    path = outdir / name
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


# ---------------------------------------------------------------------------
# configuration schemas: key -> (parser, default)

def _floats_csv(text) -> list[float]:
    if isinstance(text, list):
        return [float(v) for v in text]
    return [float(tok) for tok in str(text).split(",") if tok.strip()]


_COMMON = {
    "out": (str, "akhlab-output"),
    "plots": (bool, False),
}

SCHEMAS: dict[str, dict] = {
    "eval": {**_COMMON, "a": (float, 0.25), "t": (float, 0.0), "n_points": (int, 256)},
    "residual": {
        **_COMMON,
        "a": (_floats_csv, [0.1, 0.2, 0.25, 0.3, 0.4]),
        "times": (_floats_csv, [-3.0, -1.0, 0.0, 0.7, 2.5]),
        "n_points": (int, 512),
    },
    "verify-appendix": {**_COMMON},
    "conserved": {
        **_COMMON,
        "a": (float, 0.3),
        "times": (_floats_csv, [-2.0, 0.0, 1.0, 4.0]),
        "n_points": (int, 512),
    },
    "evolve": {
        **_COMMON,
        "a": (float, 0.25),
        "initial": (str, "breather"),
        "dt": (float, 5e-4),
        "t_start": (float, -4.0),
        "t_end": (float, 4.0),
        "scheme": (str, "strang"),
        "n_points": (int, 256),
        "snapshot_stride": (int, 400),
    },
    "experiment": {
        **_COMMON,
        "kind": (str, "qdecay"),
        "a": (float, 0.25),
        "s": (float, 0.6),
        "T_values": (_floats_csv, [2.0, 4.0, 6.0, 8.0]),
        "delta": (float, 1e-4),
        "harmonic": (int, 1),
        "dt": (float, 5e-4),
        "t_start": (float, 0.0),
        "t_end": (float, 6.0),
        "n_points": (int, 256),
        "snapshot_stride": (int, 40),
        "w0_kind": (str, "stokes-deficit"),
        "w0_amplitude": (float, 1e-3),
        "seed": (int, 0),
    },
}


def resolve_config(subcommand: str, config_file: str | None, overrides: dict) -> dict:
    schema = SCHEMAS[subcommand]
    cfg = {key: default for key, (_, default) in schema.items()}
    if config_file:
        try:
            loaded = json.loads(Path(config_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {config_file}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = sorted(set(loaded) - set(schema))
        if unknown:
            raise UsageError(f"unknown config keys for {subcommand}: {', '.join(unknown)}")
        for key, value in loaded.items():
            parser, _ = schema[key]
            cfg[key] = parser(value) if not isinstance(value, bool) else value
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in schema:
            raise UsageError(f"option --{key} is not valid for {subcommand}")
        parser, _ = schema[key]
        cfg[key] = parser(value) if not isinstance(value, bool) else value
    return cfg


# ---------------------------------------------------------------------------
# subcommand handlers: cfg -> (files, verdicts, extra_manifest)

def _run_eval(cfg, outdir):
    p = derive_params(cfg["a"])
    grid = natural_grid(p, cfg["n_points"])
    x = grid.nodes
    A = breather_field(p, cfg["t"], grid).values
    Q = q_field(p, cfg["t"], grid).values
    phase = complex(np.cos(cfg["t"]), np.sin(cfg["t"]))
    identity_residual = float(np.max(np.abs(A - phase * (p.phase_factor + Q))))
    files = [
        _write_csv(
            outdir,
            "profiles.csv",
            ["x", "re_a", "im_a", "abs_a", "re_q", "im_q"],
            [
                (float(x[j]), A[j].real, A[j].imag, float(abs(A[j])), Q[j].real, Q[j].imag)
                for j in range(grid.n_points)
            ],
        ),
        _write_json(
            outdir,
            "params.json",
            {
                "a": p.a,
                "alpha": p.alpha,
                "beta": p.beta,
                "phase_factor": [p.phase_factor.real, p.phase_factor.imag],
                "period": p.period,
                "t": cfg["t"],
                "identity_residual": identity_residual,
            },
        ),
    ]
    verdicts = {
        "phase_factor_unit_modulus": abs(abs(p.phase_factor) - 1.0) <= 1e-14,
        "alpha_relation": abs(p.alpha**2 - 2.0 * (1.0 - 2.0 * p.a)) <= 1e-14 * 2.0,
        "beta_relation": abs(p.beta**2 - 8.0 * p.a * (1.0 - 2.0 * p.a)) <= 1e-14 * 8.0,
        "gap_field_identity": identity_residual <= 1e-12,
    }
    if cfg["plots"]:
        def draw(ax):
            ax.plot(x, np.abs(A), label="|A|")
            ax.plot(x, np.abs(Q), label="|Q|")
            ax.set_xlabel("x")
            ax.set_title(f"profiles at t={cfg['t']}, a={p.a}")
            ax.legend()

        files.append(_save_plot(outdir, "profiles.svg", draw))
    return files, verdicts, {}


def _run_residual(cfg, outdir):
    rows = []
    worst = 0.0
    for a in cfg["a"]:
        p = derive_params(a)
        grid = natural_grid(p, cfg["n_points"])
        for t in cfg["times"]:
            rep = residual_report(p, t, grid)
            worst = max(worst, rep.sup_norm)
            rows.append((a, t, rep.grid_points, rep.sup_norm, rep.l2_norm))
    files = [
        _write_csv(outdir, "residuals.csv", ["a", "t", "n_points", "sup_norm", "l2_norm"], rows),
        _write_json(outdir, "summary.json", {"worst_sup_norm": worst, "tolerance": 1e-8}),
    ]
    verdicts = {"all_residuals_within_tolerance": worst <= 1e-8}
    if cfg["plots"]:
        def draw(ax):
            for a in cfg["a"]:
                pts = [(r[1], r[3]) for r in rows if r[0] == a]
                ax.semilogy([q[0] for q in pts], [q[1] for q in pts], marker="o", label=f"a={a}")
            ax.set_xlabel("t")
            ax.set_ylabel("sup |operator[A]|")
            ax.legend()

        files.append(_save_plot(outdir, "residuals.svg", draw))
    return files, verdicts, {}


def _run_verify_appendix(cfg, outdir):
    checks = verify_coefficients()
    rows = [(c.index, c.is_zero, str(c.residual)) for c in checks]
    files = [
        _write_csv(outdir, "coefficients.csv", ["index", "is_zero", "residual"], rows),
        _write_json(
            outdir,
            "summary.json",
            {
                "zeros": sum(1 for c in checks if c.is_zero),
                "total": len(checks),
            },
        ),
    ]
    verdicts = {"all_fifteen_coefficients_vanish": all(c.is_zero for c in checks)}
    return files, verdicts, {}


def _run_conserved(cfg, outdir):
    p = derive_params(cfg["a"])
    grid = natural_grid(p, cfg["n_points"])
    reports = [
        functional_report(breather_field(p, t, grid), alpha_sq=p.alpha**2, field_time=t)
        for t in cfg["times"]
    ]
    rows = [
        (r.field_time, r.mass, r.energy, r.f_value, r.h_value, r.grid_points)
        for r in reports
    ]
    verdicts = {}
    drifts = {}
    for name in ("mass", "energy", "f_value", "h_value"):
        vals = [getattr(r, name) for r in reports]
        drift = max(vals) - min(vals)
        drifts[name] = drift
        verdicts[f"{name}_time_invariant"] = drift <= 1e-8 * (1.0 + max(abs(v) for v in vals))
    files = [
        _write_csv(
            outdir,
            "functionals.csv",
            ["t", "mass", "energy", "f_value", "h_value", "n_points"],
            rows,
        ),
        _write_json(outdir, "summary.json", {"drifts": drifts}),
    ]
    if cfg["plots"]:
        def draw(ax):
            for idx, name in enumerate(["mass", "energy", "f_value", "h_value"]):
                ax.plot(cfg["times"], [row[1 + idx] for row in rows], marker="o", label=name)
            ax.set_xlabel("t")
            ax.legend()

        files.append(_save_plot(outdir, "functionals.svg", draw))
    return files, verdicts, {}


def _run_evolve(cfg, outdir):
    p = derive_params(cfg["a"])
    grid = natural_grid(p, cfg["n_points"])
    scfg = SolverConfig(
        dt=cfg["dt"],
        n_points=cfg["n_points"],
        t_start=cfg["t_start"],
        t_end=cfg["t_end"],
        scheme=cfg["scheme"],
        snapshot_stride=cfg["snapshot_stride"],
    )
    if cfg["initial"] == "breather":
        u0 = breather_field(p, cfg["t_start"], grid)
    elif cfg["initial"] == "stokes":
        u0 = stokes_field(grid, p.phase_factor, t=cfg["t_start"])
    else:
        raise UsageError(f"initial must be 'breather' or 'stokes', got {cfg['initial']!r}")
    traj = evolve(u0, scfg, alpha_sq=p.alpha**2)

    files = [
        _write_json(
            outdir,
            "metadata.json",
            {
                "config": scfg.to_dict(),
                "grid": {"n_points": grid.n_points, "length": grid.length},
                "a": p.a,
                "initial": cfg["initial"],
                "blown_up": traj.blown_up,
                "blowup_time": traj.blowup_time,
            },
        )
    ]
    x = grid.nodes
    for idx, (t, snap) in enumerate(zip(traj.times, traj.snapshots)):
        files.append(
            _write_csv(
                outdir,
                f"snapshot_{idx:04d}.csv",
                ["x", "re_u", "im_u"],
                [(float(x[j]), snap.values[j].real, snap.values[j].imag) for j in range(grid.n_points)],
            )
        )
    files.append(
        _write_csv(
            outdir,
            "diagnostics.csv",
            ["t", "mass", "energy", "f_value", "h_value"],
            [(d.field_time, d.mass, d.energy, d.f_value, d.h_value) for d in traj.diagnostics],
        )
    )
    masses = [d.mass for d in traj.diagnostics]
    mass_drift = max(masses) - min(masses)
    if cfg["initial"] == "breather":
        ref = breather_field(p, traj.final_time, grid)
    else:
        ref = stokes_field(grid, p.phase_factor, t=traj.final_time)
    closed_err = l2_norm(SampledField(grid, traj.final.values - ref.values))
    files.append(
        _write_json(
            outdir,
            "summary.json",
            {
                "mass_drift": mass_drift,
                "closed_form_l2_error": closed_err,
                "blown_up": traj.blown_up,
                "final_time": traj.final_time,
            },
        )
    )
    verdicts = {}
    if not traj.blown_up:
        verdicts["mass_drift_within_tolerance"] = mass_drift <= 1e-10 * (1.0 + max(abs(m) for m in masses))
    if cfg["plots"]:
        def draw(ax):
            ax.semilogy(
                [d.field_time for d in traj.diagnostics],
                [abs(d.mass - masses[0]) + 1e-20 for d in traj.diagnostics],
            )
            ax.set_xlabel("t")
            ax.set_ylabel("|mass drift|")

        files.append(_save_plot(outdir, "drift.svg", draw))
    return files, verdicts, {}


def _run_experiment(cfg, outdir):
    kind = cfg["kind"]
    p = derive_params(cfg["a"])
    if kind == "qdecay":
        scan = q_decay_scan(p, cfg["s"], cfg["T_values"], n_points=cfg["n_points"])
        files = [
            _write_csv(
                outdir,
                "qdecay.csv",
                ["T", "l2", "h1", "hs", "interpolation_ok"],
                [(r.T, r.l2, r.h1, r.hs, r.interpolation_ok) for r in scan.rows],
            ),
            _write_json(
                outdir,
                "summary.json",
                {
                    "fitted_rate": scan.fitted_rate,
                    "beta": p.beta,
                    "relative_error": scan.fitted_rate / p.beta - 1.0,
                },
            ),
        ]
        verdicts = {
            "rate_within_5_percent_of_beta": abs(scan.fitted_rate - p.beta) <= 0.05 * p.beta,
            "interpolation_bound_each_row": all(r.interpolation_ok for r in scan.rows),
            "h1_strictly_decreasing": all(
                r2.h1 < r1.h1 for r1, r2 in zip(scan.rows, scan.rows[1:])
            ),
        }
        if cfg["plots"]:
            def draw(ax):
                ax.semilogy([r.T for r in scan.rows], [r.l2 for r in scan.rows], marker="o", label="L2")
                ax.semilogy([r.T for r in scan.rows], [r.h1 for r in scan.rows], marker="s", label="H1")
                ax.set_xlabel("T")
                ax.legend()

            files.append(_save_plot(outdir, "qdecay.svg", draw))
        return files, verdicts, {}

    if kind == "instability":
        rep = instability_report(p, cfg["s"], cfg["T_values"], n_points=cfg["n_points"])
        files = [
            _write_csv(
                outdir,
                "instability.csv",
                ["T", "eps", "d0", "ratio"],
                [(r.T, r.eps, r.d0, r.ratio) for r in rep.rows],
            ),
            _write_json(
                outdir,
                "summary.json",
                {
                    "s": rep.s,
                    "c_s_estimate": rep.c_s_estimate,
                    "fitted_decay_rate": rep.fitted_decay_rate,
                    "ratio_growth_factor": rep.rows[-1].ratio / rep.rows[0].ratio,
                },
            ),
        ]
        d0s = [r.d0 for r in rep.rows]
        verdicts = {
            "ratio_strictly_increasing": all(
                r2.ratio > r1.ratio for r1, r2 in zip(rep.rows, rep.rows[1:])
            ),
            "d0_constant_across_rows": max(d0s) - min(d0s) <= 1e-8,
            "d0_strictly_positive": min(d0s) > 0.05,
        }
        if cfg["plots"]:
            def draw(ax):
                ax.semilogy([r.T for r in rep.rows], [r.ratio for r in rep.rows], marker="o")
                ax.set_xlabel("T")
                ax.set_ylabel("d0 / eps(T)")

            files.append(_save_plot(outdir, "instability.svg", draw))
        return files, verdicts, {}

    if kind == "mi":
        scfg = SolverConfig(
            dt=cfg["dt"],
            n_points=cfg["n_points"],
            t_start=cfg["t_start"],
            t_end=cfg["t_end"],
            snapshot_stride=cfg["snapshot_stride"],
        )
        fit = mi_growth_rate(p, cfg["delta"], scfg, harmonic=cfg["harmonic"])
        k = cfg["harmonic"] * p.alpha
        in_band = k**2 < 2.0
        predicted = k * np.sqrt(max(2.0 - k**2, 0.0))
        files = [
            _write_csv(outdir, "sideband.csv", ["t", "amplitude"], list(fit.rows)),
            _write_json(
                outdir,
                "summary.json",
                {
                    "fitted_rate": fit.rate,
                    "predicted_rate": float(predicted),
                    "sideband_wavenumber": float(k),
                    "in_instability_band": in_band,
                    "window_truncated_by_blowup": fit.window_truncated,
                },
            ),
        ]
        if in_band:
            verdicts = {"rate_within_2_percent": abs(fit.rate - predicted) <= 0.02 * predicted}
        else:
            verdicts = {"no_growth_outside_band": abs(fit.rate) < 0.05}
        if cfg["plots"]:
            def draw(ax):
                ax.semilogy([r[0] for r in fit.rows], [r[1] for r in fit.rows], marker=".")
                ax.set_xlabel("t")
                ax.set_ylabel("sideband amplitude")

            files.append(_save_plot(outdir, "sideband.svg", draw))
        return files, verdicts, {}

    if kind == "divergence":
        grid = natural_grid(p, cfg["n_points"])
        rng_note = None
        if cfg["w0_kind"] == "zero":
            w0 = SampledField(grid, np.zeros(grid.n_points, dtype=complex))
        elif cfg["w0_kind"] == "stokes-deficit":
            w0 = stokes_deficit_perturbation(p, cfg["t_start"], grid)
        elif cfg["w0_kind"] == "random":
            rng = np.random.default_rng(cfg["seed"])
            rng_note = f"numpy.random.default_rng(PCG64), seed={cfg['seed']}"
            w0 = random_band_limited(grid, rng, amplitude=cfg["w0_amplitude"])
        else:
            raise UsageError(
                f"w0_kind must be zero, stokes-deficit or random, got {cfg['w0_kind']!r}"
            )
        scfg = SolverConfig(
            dt=cfg["dt"],
            n_points=cfg["n_points"],
            t_start=cfg["t_start"],
            t_end=cfg["t_end"],
            snapshot_stride=cfg["snapshot_stride"],
        )
        scan = breather_perturbation_divergence(p, w0, scfg, cfg["s"])
        files = [
            _write_csv(outdir, "divergence.csv", ["t", "modulated_distance"], list(scan.rows)),
            _write_json(
                outdir,
                "summary.json",
                {
                    "blown_up": scan.blown_up,
                    "max_distance": max(r[1] for r in scan.rows),
                    "w0_kind": cfg["w0_kind"],
                },
            ),
        ]
        verdicts = {"scan_completed": True}
        extra = {"rng": rng_note} if rng_note else {}
        if cfg["plots"]:
            def draw(ax):
                ax.plot([r[0] for r in scan.rows], [r[1] for r in scan.rows], marker=".")
                ax.set_xlabel("t")
                ax.set_ylabel("modulated distance")

            files.append(_save_plot(outdir, "divergence.svg", draw))
        return files, verdicts, extra

    raise UsageError(f"unknown experiment kind {kind!r}")


_HANDLERS = {
    "eval": _run_eval,
    "residual": _run_residual,
    "verify-appendix": _run_verify_appendix,
    "conserved": _run_conserved,
    "evolve": _run_evolve,
    "experiment": _run_experiment,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="akhlab",
        description="numerical and exact-algebraic laboratory for the periodic NLS breather",
    )
    parser.add_argument("--version", action="version", version=f"akhlab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    aliases = {"n_points": ["--n"], "T_values": ["--T"]}

    def add(name: str, positional_kind: bool = False):
        sp = sub.add_parser(name)
        # let values like "-3,0,2" pass as arguments rather than flags
        sp._negative_number_matcher = re.compile(r"^-[\d.]")
        sp.add_argument("--config", default=None, help="JSON config file")
        if positional_kind:
            sp.add_argument("kind_pos", nargs="?", default=None, metavar="KIND")
        for key, (parser_fn, default) in SCHEMAS[name].items():
            flags = ["--" + key.replace("_", "-"), *aliases.get(key, [])]
            if parser_fn is bool:
                sp.add_argument(*flags, dest=key, action="store_true", default=None)
            else:
                sp.add_argument(*flags, dest=key, default=None, metavar=key.upper())
        return sp

    for name in SCHEMAS:
        add(name, positional_kind=(name == "experiment"))
    return parser


def run(subcommand: str, cfg: dict) -> int:
    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    files, verdicts, extra = _HANDLERS[subcommand](cfg, outdir)
    ok = all(verdicts.values())
    if not ok:
        files.append(
            _write_json(
                outdir,
                "failure_report.json",
                {"failed": sorted(k for k, v in verdicts.items() if not v)},
            )
        )
    manifest = {
        "command": subcommand,
        "config": {k: cfg[k] for k in sorted(cfg)},
        "files": [
            {"path": f.name, "sha256": _sha256(f)} for f in sorted(files, key=lambda f: f.name)
        ],
        "verdicts": verdicts,
        **extra,
    }
    _write_json(outdir, "manifest.json", manifest)
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    ns = vars(args)
    subcommand = ns.pop("subcommand")
    config_file = ns.pop("config")
    kind_pos = ns.pop("kind_pos", None)
    overrides = {k: v for k, v in ns.items() if v is not None}
    if kind_pos is not None:
        overrides.setdefault("kind", kind_pos)
    try:
        cfg = resolve_config(subcommand, config_file, overrides)
        return run(subcommand, cfg)
    except (UsageError, ValueError) as exc:
        print(f"akhlab: error: {exc}", file=sys.stderr)
        return 2


def entry():  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
