"""Command-line front end: reproducible figure-data pipelines.

Subcommands map to the capabilities of the library: spectrum,
entanglement, ensemble, levelstats, classical and scan.  Every run writes
a manifest (config echo, package and library versions, seed, wall time)
next to its data files, and reruns with the same config and seed produce
byte-identical CSVs.  Exit codes: 0 success, 2 config error, 3 numeric
failure.
"""

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np
import scipy

from . import __version__, ensembles, entanglement, io, levelstats, spectral
from .classical import (
    init_from_actions,
    integrate,
    trajectory_observables,
)
from .errors import NumericsError
from .model import (
    ModelParams,
    build_hamiltonian,
    enumerate_basis,
    symmetry_sectors,
)

try:  # 3.11+
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - 3.10 fallback
    import tomli as tomllib


class ConfigError(Exception):
    """Invalid or inconsistent run configuration."""


DEFAULTS = {
    "N": 21,
    "u": 0.5,
    "w": 0.082,
    "Omega": 1.0,
    "seed": 1,
    "threads": 0,  # 0 = leave BLAS pool alone
    # ensemble
    "samples": 1000,
    "symmetrize": True,
    # entanglement / gge
    "shell": 11,
    "states": "markers",
    "gge_method": "topk_shannon",
    "gge_param": 100,
    "cutoff": entanglement.DEFAULT_CUTOFF,
    # levelstats
    "omegas": [0.01, 0.082, 0.5],
    "bandwidth": 8.0,
    "trim": 0.02,
    "bootstrap": 200,
    # classical
    "J": 11.0,
    "n": 0.0,
    "j": 0.0,
    "phi_lr": 0.0,
    "phi_intra": [0.0, 0.0],
    "t_max": 1000.0,
    "tolerance": 1e-8,
    "n_samples": 2001,
    "cache": True,
}


def load_config(path):
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        if p.suffix.lower() == ".toml":
            with open(p, "rb") as fh:
                return tomllib.load(fh)
        with open(p) as fh:
            return json.load(fh)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}")


def merge_config(args):
    """Defaults < config file < explicit command-line flags."""
    cfg = dict(DEFAULTS)
    if args.config:
        file_cfg = load_config(args.config)
        unknown = set(file_cfg) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    for key, value in vars(args).items():
        if key in cfg and value is not None:
            cfg[key] = value
    if cfg["N"] < 1:
        raise ConfigError(f"N must be >= 1, got {cfg['N']}")
    if cfg["u"] < 0 or cfg["w"] < 0 or cfg["Omega"] <= 0:
        raise ConfigError("need u >= 0, w >= 0, Omega > 0")
    return cfg


def params_from_config(cfg, w=None):
    return ModelParams.from_dimensionless(
        cfg["N"], cfg["u"], cfg["w"] if w is None else w, cfg["Omega"]
    )


def _limit_threads(k):
    if not k:
        return
    try:
        import threadpoolctl

        threadpoolctl.threadpool_limits(limits=int(k))
    except ImportError:  # pragma: no cover
        pass


# ---------------------------------------------------------------------------
# eigendecomposition cache

def _cache_key(params):
    blob = json.dumps(
        ["eigen-v1", params.N, repr(params.u), repr(params.w), repr(params.Omega)]
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def _solve_exact(params, basis, sectors, cache_dir=None):
    """Sector-resolved eigendecomposition, cached on (N, u, w, Omega).

    At zero inter-dimer coupling the n_L blocks are resolved independently
    instead (L<->R-swapped product pairs are exactly degenerate across
    blocks, and sector mixtures would scramble them).
    """
    if params.omega == 0.0:
        H = build_hamiltonian(params, basis)
        return spectral.diagonalize(H, basis=basis)
    if cache_dir is not None:
        cache_dir = Path(cache_dir)
        cache_dir.mkdir(parents=True, exist_ok=True)
        path = cache_dir / f"{_cache_key(params)}.npz"
        sidecar = path.with_suffix(".sha256")
        if path.exists() and sidecar.exists():
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
            if digest == sidecar.read_text().strip():
                data = np.load(path)
                return spectral.EigenDecomposition(
                    energies=data["energies"],
                    states=data["states"],
                    sectors=data["sectors"],
                    sector_parities=tuple(map(tuple, data["parities"])),
                )
    H = build_hamiltonian(params, basis)
    dec = spectral.diagonalize(H, sectors=sectors)
    if cache_dir is not None:
        np.savez(
            path,
            energies=dec.energies,
            states=dec.states,
            sectors=dec.sectors,
            parities=np.array(dec.sector_parities),
        )
        sidecar.write_text(hashlib.sha256(path.read_bytes()).hexdigest() + "\n")
    return dec


def _spectral_pipeline(cfg, out):
    basis = enumerate_basis(cfg["N"])
    sectors = symmetry_sectors(basis)
    params = params_from_config(cfg)
    cache_dir = out / "cache" if cfg["cache"] else None
    dec = _solve_exact(params, basis, sectors, cache_dir)
    unperturbed = spectral.build_unperturbed_basis(params, basis)
    overlaps = spectral.overlap_probabilities(dec, unperturbed)
    obs = spectral.imbalance_observables(dec, basis, unperturbed, overlaps)
    return basis, params, dec, unperturbed, overlaps, obs


# ---------------------------------------------------------------------------
# commands

def cmd_spectrum(cfg, out):
    basis, params, dec, unperturbed, overlaps, obs = _spectral_pipeline(cfg, out)
    io.write_csv(
        out / "eigenstates.csv", "eigenstate-table", 1,
        ["index", "sector", "energy", "pn", "shannon", "sigma_n", "sigma_j",
         "mean_J", "shell", "ambiguous"],
        [
            (i, obs.sectors[i], obs.energies[i], obs.pn[i], obs.shannon[i],
             obs.sigma_n[i], obs.sigma_j[i], obs.mean_J[i], obs.shell[i],
             obs.ambiguous[i])
            for i in range(obs.size)
        ],
    )
    pn_mu = spectral.participation_number(overlaps.T)
    io.write_csv(
        out / "unperturbed.csv", "unperturbed-table", 1,
        ["index", "J", "n", "j", "energy", "pn_exact"],
        [
            (mu, unperturbed.J[mu], unperturbed.n[mu], unperturbed.j[mu],
             unperturbed.energies[mu], pn_mu[mu])
            for mu in range(unperturbed.size)
        ],
    )
    files = ["eigenstates.csv", "unperturbed.csv"]
    shell = cfg["shell"]
    if np.any(obs.shell == shell):
        for label, idx in _marker_states(obs, shell).items():
            jd = spectral.joint_distribution(dec.states[:, idx], unperturbed, shell)
            name = f"pnj_shell{shell}_{label}.csv"
            io.write_csv(
                out / name, "joint-distribution", 1,
                ["n", "j", "p", "leakage", "warning"],
                [(jd.n[k], jd.j[k], jd.p[k], jd.leakage, jd.warning)
                 for k in range(jd.n.size)],
            )
            files.append(name)
    return {"D": basis.size, "files": files}


def _marker_states(obs, shell):
    """(min sigma_n, max sigma_n, max shannon) indices within one shell."""
    sel = np.flatnonzero(obs.shell == shell)
    if sel.size == 0:
        raise ConfigError(f"no eigenstates in shell J={shell}")
    return {
        "min_sigma_n": int(sel[np.argmin(obs.sigma_n[sel])]),
        "max_sigma_n": int(sel[np.argmax(obs.sigma_n[sel])]),
        "max_shannon": int(sel[np.argmax(obs.shannon[sel])]),
    }


def cmd_entanglement(cfg, out):
    basis, params, dec, unperturbed, overlaps, obs = _spectral_pipeline(cfg, out)

    selection = cfg["states"]
    if selection == "markers":
        chosen = _marker_states(obs, cfg["shell"])
    elif selection == "all":
        chosen = {f"state_{i}": i for i in range(dec.size)}
    elif isinstance(selection, (list, tuple)):
        chosen = {f"state_{i}": int(i) for i in selection}
    else:
        raise ConfigError(f"unknown state selection {selection!r}")

    spectra_rows = []
    summary_rows = []
    for name, idx in chosen.items():
        blocks = entanglement.reduced_density_blocks(dec.states[:, idx], basis)
        spec = entanglement.entanglement_spectrum(blocks, cfg["cutoff"])
        for n_L, lam, xi, xit in zip(spec.block_of, spec.lam, spec.xi, spec.xi_tilde):
            spectra_rows.append((name, idx, n_L, lam, xi, xit))
        for n_L in range(params.N + 1):
            summary_rows.append((
                name, idx, n_L, spec.weights[n_L], spec.S_blocks[n_L],
                spec.S_tilde_blocks[n_L], spec.S,
            ))
    io.write_csv(
        out / "entanglement_spectra.csv", "entanglement-spectrum", 1,
        ["label", "state", "n_L", "lambda", "xi", "xi_tilde"], spectra_rows,
    )
    io.write_csv(
        out / "entanglement_summary.csv", "entanglement-summary", 1,
        ["label", "state", "n_L", "p", "S_block", "S_tilde", "S_total"],
        summary_rows,
    )

    S_all = np.empty(dec.size)
    for i in range(dec.size):
        _, _, S_all[i] = entanglement.state_entropy(dec.states[:, i], basis, cfg["cutoff"])
    io.write_csv(
        out / "chaos_vs_entanglement.csv", "chaos-entanglement", 1,
        ["index", "energy", "shannon", "entropy", "shell"],
        [
            (i, obs.energies[i], obs.shannon[i], S_all[i], obs.shell[i])
            for i in range(dec.size)
        ],
    )

    erg = ensembles.ergodic_prediction(params.N)
    goe = ensembles.goe_prediction(params.N)
    S_gge_best = None
    for J in range(params.N + 1):
        try:
            region = ensembles.chaotic_region(
                J, obs, unperturbed, overlaps, cfg["gge_method"], cfg["gge_param"]
            )
        except ValueError:
            continue
        S_J = ensembles.gge_prediction(region).S_total
        if S_gge_best is None or S_J > S_gge_best:
            S_gge_best = S_J
    try:
        region = ensembles.chaotic_region(
            cfg["shell"], obs, unperturbed, overlaps,
            cfg["gge_method"], cfg["gge_param"],
        )
        gge = ensembles.gge_prediction(region)
        io.write_csv(
            out / f"gge_shell{cfg['shell']}.csv", "gge-prediction", 1,
            ["n_L", "count", "p_gge", "S_gge"],
            [(nl, region.counts[nl], gge.p[nl], gge.S_blocks[nl])
             for nl in range(params.N + 1)],
        )
    except ValueError:
        pass
    refs = {
        "H_goe": spectral.goe_reference(basis.size),
        "S_erg": erg.S_total,
        "S_goe": goe.S_total,
        "S_gge": S_gge_best,
        "S_max": erg.S_max,
        "gge_method": cfg["gge_method"],
        "gge_param": cfg["gge_param"],
        "selected_states": chosen,
    }
    io.write_json(out / "references.json", refs)
    return {"files": ["entanglement_spectra.csv", "chaos_vs_entanglement.csv",
                      "references.json"]}


def cmd_ensemble(cfg, out):
    basis = enumerate_basis(cfg["N"])
    states = ensembles.sample_ensemble(
        basis, cfg["samples"], cfg["seed"], cfg["symmetrize"]
    )
    stats = ensembles.ensemble_statistics(states, basis)
    erg = ensembles.ergodic_prediction(cfg["N"])
    goe = ensembles.goe_prediction(cfg["N"])
    io.write_csv(
        out / "ensemble_stats.csv", "random-state-ensemble", 1,
        ["n_L", "p_mean", "p_std", "S_mean", "S_std", "p_erg", "S_erg", "S_goe"],
        [
            (nl, stats.p_mean[nl], stats.p_std[nl], stats.S_mean[nl],
             stats.S_std[nl], erg.p[nl], erg.S_blocks[nl], goe.S_blocks[nl])
            for nl in stats.n_L
        ],
    )
    io.write_json(out / "ensemble_meta.json", {
        "N": cfg["N"], "samples": cfg["samples"], "seed": cfg["seed"],
        "symmetrize": bool(cfg["symmetrize"]),
        "S_total_mean": stats.S_total_mean, "S_total_std": stats.S_total_std,
        "S_erg": erg.S_total, "S_goe": goe.S_total,
    })
    return {"files": ["ensemble_stats.csv", "ensemble_meta.json"]}


def cmd_levelstats(cfg, out):
    basis = enumerate_basis(cfg["N"])
    sectors = symmetry_sectors(basis)
    cache_dir = out / "cache" if cfg["cache"] else None
    s_grid = np.linspace(0.0, 4.0, 161)
    summary = []
    for w in cfg["omegas"]:
        params = params_from_config(cfg, w=w)
        dec = _solve_exact(params, basis, sectors, cache_dir)
        spectra = [dec.energies[dec.sectors == k] for k in range(4)]
        ana = levelstats.analyze_sector_spectra(
            spectra, bandwidth=cfg["bandwidth"], trim=cfg["trim"],
            n_bootstrap=cfg["bootstrap"], seed=cfg["seed"],
        )
        edges, dens = levelstats.spacing_histogram(ana.spacings, s_max=4.0)
        centers = 0.5 * (edges[:-1] + edges[1:])
        tag = repr(float(w)).replace(".", "p")
        io.write_csv(
            out / f"spacings_w{tag}.csv", "spacing-histogram", 1,
            ["s", "density", "poisson", "wigner", "brody"],
            [
                (c, d, levelstats.poisson_curve(c), levelstats.wigner_curve(c),
                 levelstats.brody_curve(c, ana.brody.beta))
                for c, d in zip(centers, dens)
            ],
        )
        summary.append((w, ana.brody.beta, ana.brody.ci_low, ana.brody.ci_high,
                        ana.gap.mean_r, ana.gap.n_skipped, ana.mean_spacing))
    io.write_csv(
        out / "levelstats_summary.csv", "levelstats-summary", 1,
        ["omega", "beta", "beta_ci_low", "beta_ci_high", "mean_r",
         "skipped_pairs", "mean_spacing"],
        summary,
    )
    return {"files": ["levelstats_summary.csv"], "omegas": list(cfg["omegas"])}


def cmd_classical(cfg, out):
    params = params_from_config(cfg)
    phi_intra = cfg["phi_intra"]
    if np.isscalar(phi_intra):
        phi_intra = (float(phi_intra), float(phi_intra))
    try:
        amps0 = init_from_actions(
            params, cfg["J"], cfg["n"], cfg["j"],
            phi_LR=cfg["phi_lr"], phi_intra=tuple(phi_intra),
        )
    except ValueError as exc:
        raise ConfigError(f"infeasible launch: {exc}")
    traj = integrate(
        amps0, params, cfg["t_max"], tolerance=cfg["tolerance"],
        n_samples=cfg["n_samples"],
    )
    obs = trajectory_observables(traj)
    io.write_csv(
        out / "trajectory.csv", "classical-trajectory", 1,
        ["t", "n", "j", "J", "E", "n_L", "clamped"],
        [
            (obs.t[i], obs.n[i], obs.j[i], obs.J[i], obs.E[i], obs.n_L[i],
             obs.clamped[i])
            for i in range(obs.t.size)
        ],
    )
    io.write_json(out / "trajectory_meta.json", {
        "launch": {"J": cfg["J"], "n": cfg["n"], "j": cfg["j"],
                   "phi_lr": cfg["phi_lr"], "phi_intra": list(phi_intra)},
        "t_max": cfg["t_max"], "n_samples": cfg["n_samples"],
        "integrator": {"method": "DOP853", "rtol": traj.rtol, "atol": traj.atol},
        "norm_drift": traj.norm_drift, "energy_drift": traj.energy_drift,
        "J_band": [float(obs.J.min()), float(obs.J.max())],
        "clamped_samples": int(obs.clamped.sum()),
    })
    return {"files": ["trajectory.csv", "trajectory_meta.json"],
            "norm_drift": traj.norm_drift, "energy_drift": traj.energy_drift}


def cmd_scan(cfg, out):
    """Chaos-measure scan over inter-dimer couplings (Brody and gap ratio)."""
    return cmd_levelstats(cfg, out)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "entanglement": cmd_entanglement,
    "ensemble": cmd_ensemble,
    "levelstats": cmd_levelstats,
    "classical": cmd_classical,
    "scan": cmd_scan,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="josonlab",
        description="Coupled Bose-Josephson junction workbench",
    )
    parser.add_argument("--config", help="JSON or TOML run configuration")
    parser.add_argument("--out", default="runs", help="output directory")
    parser.add_argument("--seed", type=int, help="master random seed")
    parser.add_argument("--threads", type=int, help="cap BLAS worker threads")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int)
    common.add_argument("--u", type=float)
    common.add_argument("--w", type=float)
    common.add_argument("--Omega", type=float)

    p_spec = sub.add_parser("spectrum", parents=[common])
    p_spec.add_argument("--shell", type=int,
                        help="shell whose marker-state p_{n,j} grids are written")

    p_ent = sub.add_parser("entanglement", parents=[common])
    p_ent.add_argument("--shell", type=int)
    p_ent.add_argument("--states", help="'markers', 'all', or comma-separated indices")
    p_ent.add_argument("--gge-method", dest="gge_method",
                       choices=["topk_shannon", "pn_threshold"])
    p_ent.add_argument("--gge-param", dest="gge_param", type=float)

    p_ens = sub.add_parser("ensemble", parents=[common])
    p_ens.add_argument("--samples", type=int)
    p_ens.add_argument("--no-symmetrize", dest="symmetrize", action="store_false",
                       default=None)

    for name in ("levelstats", "scan"):
        p_ls = sub.add_parser(name, parents=[common])
        p_ls.add_argument("--omegas", type=lambda s: [float(x) for x in s.split(",")])
        p_ls.add_argument("--bandwidth", type=float)
        p_ls.add_argument("--trim", type=float)
        p_ls.add_argument("--bootstrap", type=int)

    p_cl = sub.add_parser("classical", parents=[common])
    p_cl.add_argument("--J", type=float)
    p_cl.add_argument("--n", type=float)
    p_cl.add_argument("--j", type=float)
    p_cl.add_argument("--phi-lr", dest="phi_lr", type=float)
    p_cl.add_argument("--phi-intra", dest="phi_intra",
                      type=lambda s: [float(x) for x in s.split(",")])
    p_cl.add_argument("--t-max", dest="t_max", type=float)
    p_cl.add_argument("--tolerance", type=float)
    p_cl.add_argument("--n-samples", dest="n_samples", type=int)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        cfg = merge_config(args)
        if isinstance(cfg.get("states"), str) and cfg["states"] not in ("markers", "all"):
            try:
                cfg["states"] = [int(x) for x in cfg["states"].split(",")]
            except ValueError:
                raise ConfigError(f"bad state selection {cfg['states']!r}")
        _limit_threads(cfg["threads"])
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        result = COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericsError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3

    manifest = {
        "command": args.command,
        "config": {k: cfg[k] for k in sorted(cfg)},
        "versions": {
            "josonlab": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": sys.version.split()[0],
        },
        "wall_time_s": round(time.time() - t0, 3),
        "result": result,
    }
    io.write_json(out / f"manifest_{args.command}.json", manifest)
    print(f"{args.command}: ok ({manifest['wall_time_s']}s) -> {out}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
