"""Command-line front end: ``tc3 {spectrum,analytic,verify,coherent,compare}``.

Options can also come from a flat ``key = value`` file given with
``--config``; keys are the long option names without the leading dashes
(``w1``, ``g``, ``qmax``, ``method``, ...), ``#`` starts a comment. Flags on
the command line win over the file, the file wins over built-in defaults.

Output goes to ``--output`` (default: stdout). A relative output path is
resolved against ``$TC3_OUTPUT_DIR`` when that variable is set.

Exit codes: 0 success, 1 I/O failure, 2 invalid arguments, 3 method not
applicable, 4 accuracy or domain failure (including a failed ``verify``).
"""

import argparse
import importlib.resources
import io
import json
import math
import os
import sys

import numpy as np

from . import algebra, diag, spectra, verify, wavefn
from .errors import DomainError, InvalidArgument, TCError
from .spectra import ModelParams

OUTPUT_DIR_ENV = "TC3_OUTPUT_DIR"
SCHEMA_FILE = "output.schema.json"

EXIT_OK = 0
EXIT_IO = 1
EXIT_ARGS = 2
EXIT_FAILED = 4

ANALYTIC_LABELS = {
    "su11": ("n_a", "n_l", "m_n"),
    "bogoliubov": ("n_a", "n_abar", "n_d"),
    "nm": ("N_c", "N_1", "N_2"),
    "su2": ("n_c", "n_l", "m_n"),
}

DEFAULTS = {
    "w1": 1.0,
    "w2": 1.0,
    "w3": 1.0,
    "g": 0.1,
    "format": "json",
    "output": "-",
    # spectrum
    "qmax": None,
    "q_ab": None,
    "q_ac": None,
    # analytic
    "method": None,
    "q1": "0:2",
    "q2": "0:2",
    "q3": "0:2",
    "delta_sign": "paper",
    # coherent
    "group": "su11",
    "k": 0.5,
    "n": 0,
    "j": 0.5,
    "mu": -0.5,
    "xi": None,
    "zeta": None,
    "wavefunction": False,
    "n_rho": wavefn.DEFAULT_N_RHO,
    "n_phi": wavefn.DEFAULT_N_PHI,
    "rho_max": wavefn.DEFAULT_RHO_MAX,
    "truncation": None,
    # compare
    "g_grid": "0,0.05,0.1,0.2,0.4",
    "beta": 1.0,
    "workers": 1,
}


# ---------------------------------------------------------------------------
# serialization


def _json_scalar(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return "null"
        text = "%.17g" % value
        if text == "-0":
            text = "0"
        return text
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(obj, indent=0):
    """Deterministic JSON with 17 significant digits for every float."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_json_scalar(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    return _json_scalar(obj)


def _csv_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = "%.12g" % float(value)
        return "0" if text == "-0" else text
    return str(value)


def csv_text(header, rows):
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_csv_cell(v) for v in row) + "\n")
    return out.getvalue()


def load_schema():
    """The JSON schema that every ``--format json`` output validates against."""
    text = importlib.resources.files("tc3").joinpath("schemas", SCHEMA_FILE).read_text(encoding="utf-8")
    return json.loads(text)


def _resolve_output(path):
    if path in (None, "-"):
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def write_output(text, path):
    target = _resolve_output(path)
    if target is None:
        sys.stdout.write(text)
        return
    with open(target, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def parse_range(text):
    """``"a:b"`` inclusive integer range, ``"a"`` single value; ``b < a`` is empty."""
    text = str(text).strip()
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError as exc:
        raise InvalidArgument(f"bad integer range {text!r}") from exc


def parse_grid(text):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidArgument(f"bad number list {text!r}") from exc


def parse_complex(text):
    if text is None:
        return None
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise InvalidArgument(f"bad complex number {text!r}") from exc


def read_config(path):
    """Flat ``key = value`` file to a dict with option-style keys."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InvalidArgument(f"cannot read config {path!r}: {exc}") from exc
    for number, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgument(f"{path}:{number}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise InvalidArgument(f"{path}:{number}: unknown key {key!r}")
        values[key] = value
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InvalidArgument(message)


def _common(p):
    p.add_argument("--w1", type=float, help="pump frequency")
    p.add_argument("--w2", type=float, help="signal frequency")
    p.add_argument("--w3", type=float, help="idler frequency")
    p.add_argument("--g", type=float, help="coupling constant")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--config", help="key = value file with defaults for any option")


def build_parser():
    parser = _Parser(prog="tc3", description="Three-mode trilinear boson model toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="exact block spectra")
    _common(p)
    p.add_argument("--qmax", type=int, help="all blocks with q_ab, q_ac <= QMAX")
    p.add_argument("--q-ab", dest="q_ab", help="q_ab range LO:HI (inclusive)")
    p.add_argument("--q-ac", dest="q_ac", help="q_ac range LO:HI (inclusive)")
    p.add_argument("--block", nargs=2, type=int, action="append", metavar=("Q_AB", "Q_AC"))

    p = sub.add_parser("analytic", help="closed-form spectra over quantum-number ranges")
    _common(p)
    p.add_argument("--method", choices=tuple(ANALYTIC_LABELS))
    p.add_argument("--q1", help="range of the first quantum number")
    p.add_argument("--q2", help="range of the second quantum number")
    p.add_argument("--q3", help="range of the third quantum number")
    p.add_argument("--delta-sign", dest="delta_sign", choices=("paper", "alt", "both"))

    p = sub.add_parser("verify", help="run the invariant suites")
    _common(p)
    p.add_argument("--only", action="append", choices=tuple(verify.SUITES))
    p.add_argument("--inject-fault", dest="inject_fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("coherent", help="number coherent state amplitudes or wavefunctions")
    _common(p)
    p.add_argument("--group", choices=("su11", "su2"))
    p.add_argument("--k", type=float, help="Bargmann index (su11)")
    p.add_argument("--n", type=int, help="seed level (su11)")
    p.add_argument("--j", type=float, help="multiplet (su2)")
    p.add_argument("--mu", type=float, help="seed weight (su2)")
    p.add_argument("--xi", help="displacement parameter, e.g. 0.3+0.1j")
    p.add_argument("--zeta", help="normal-ordered parameter (alternative to --xi)")
    p.add_argument("--truncation", type=int, help="su11 amplitude cutoff")
    p.add_argument("--wavefunction", action="store_true", help="emit the polar-grid wavefunction")
    p.add_argument("--n-rho", dest="n_rho", type=int)
    p.add_argument("--n-phi", dest="n_phi", type=int)
    p.add_argument("--rho-max", dest="rho_max", type=float)

    p = sub.add_parser("compare", help="analytic vs exact discrepancy and expectation matching")
    _common(p)
    p.add_argument("--g-grid", dest="g_grid", help="comma-separated coupling values")
    p.add_argument("--qmax", type=int)
    p.add_argument("--method", choices=tuple(ANALYTIC_LABELS))
    p.add_argument("--delta-sign", dest="delta_sign", choices=("paper", "alt"))
    p.add_argument("--beta", type=float, help="|beta| for the matching scan")
    p.add_argument("--workers", type=int)
    return parser


_TYPES = {
    "w1": float, "w2": float, "w3": float, "g": float, "qmax": int, "k": float, "n": int,
    "j": float, "mu": float, "n_rho": int, "n_phi": int, "rho_max": float, "truncation": int,
    "beta": float, "workers": int,
}
_BOOLS = ("wavefunction",)


def _convert(key, value):
    if key in _BOOLS:
        return str(value).strip().lower() in ("1", "true", "yes", "on")
    if key in _TYPES:
        try:
            return _TYPES[key](value)
        except ValueError as exc:
            raise InvalidArgument(f"bad value for {key}: {value!r}") from exc
    return value


def resolve(args):
    """Merge flags, config file and defaults into a plain dict."""
    config = read_config(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None and flag is not False:
            merged[key] = flag
        elif key in config:
            merged[key] = _convert(key, config[key])
        else:
            merged[key] = default
    for extra in ("command", "block", "only", "inject_fault"):
        merged[extra] = getattr(args, extra, None)
    return merged


def model_params(cfg):
    return ModelParams(cfg["w1"], cfg["w2"], cfg["w3"], cfg["g"])


# ---------------------------------------------------------------------------
# commands


def _blocks(cfg):
    if cfg["block"]:
        return [tuple(b) for b in cfg["block"]]
    if cfg["q_ab"] is not None or cfg["q_ac"] is not None:
        qmax = cfg["qmax"] if cfg["qmax"] is not None else 0
        qa = parse_range(cfg["q_ab"]) if cfg["q_ab"] is not None else list(range(qmax + 1))
        qc = parse_range(cfg["q_ac"]) if cfg["q_ac"] is not None else list(range(qmax + 1))
    else:
        qmax = cfg["qmax"] if cfg["qmax"] is not None else 2
        qa = qc = list(range(qmax + 1))
    return [(a, c) for a in qa for c in qc]


def cmd_spectrum(cfg):
    params = model_params(cfg)
    blocks = _blocks(cfg)
    if any(a < 0 or c < 0 for a, c in blocks):
        raise InvalidArgument("block charges must be nonnegative")
    results = [diag.block_spectrum(params, a, c) for a, c in blocks]
    if cfg["format"] == "csv":
        rows = [(r.labels["q_ab"], r.labels["q_ac"], i, float(e)) for r in results for i, e in enumerate(r.eigenvalues)]
        return csv_text(("q_ab", "q_ac", "index", "eigenvalue"), rows)
    payload = [{"q_ab": r.labels["q_ab"], "q_ac": r.labels["q_ac"], "eigenvalues": list(r.eigenvalues)} for r in results]
    return dumps(payload) + "\n"


def _analytic_value(method, params, q, delta_sign):
    if method == "su11":
        return spectra.energy_su11(params, q)
    if method == "bogoliubov":
        return spectra.energy_bogoliubov(params, *q)
    if method == "nm":
        return spectra.energy_normal_mode(params, q, delta_sign=delta_sign)
    return spectra.energy_su2(params, q)


def cmd_analytic(cfg):
    method = cfg["method"]
    if method is None:
        raise InvalidArgument("analytic needs --method")
    params = model_params(cfg)
    labels = ANALYTIC_LABELS[method]
    ranges = [parse_range(cfg[k]) for k in ("q1", "q2", "q3")]
    if method == "nm":
        signs = ("paper", "alt") if cfg["delta_sign"] == "both" else (cfg["delta_sign"],)
    else:
        signs = ("paper",)
    rows = []
    for sign in signs:
        for q1 in ranges[0]:
            for q2 in ranges[1]:
                for q3 in ranges[2]:
                    q = (q1, q2, q3)
                    if method == "su2" and q2 + q3 / 2 < abs(q3) / 2:
                        continue
                    if min(q1, q2) < 0 or (method != "su2" and method != "su11" and q3 < 0):
                        raise InvalidArgument(f"negative quantum number in {q}")
                    value = _analytic_value(method, params, q, sign)
                    nonreal = spectra.is_nonreal(value)
                    rows.append({
                        "method": method,
                        "delta_sign": sign if method == "nm" else None,
                        "labels": dict(zip(labels, q)),
                        "energy": complex(value).real,
                        "energy_imag": complex(value).imag,
                        "nonreal": nonreal,
                    })
    if cfg["format"] == "csv":
        body = [
            (r["method"], r["delta_sign"] or "", *r["labels"].values(), r["energy"], r["energy_imag"], r["nonreal"])
            for r in rows
        ]
        return csv_text(("method", "delta_sign", "q1", "q2", "q3", "energy", "energy_imag", "nonreal"), body)
    return dumps({"method": method, "labels": list(labels), "rows": rows}) + "\n"


def cmd_verify(cfg):
    results = verify.run_suites(cfg["only"], fault=bool(cfg["inject_fault"]))
    passed = all(r.passed for r in results)
    if cfg["format"] == "csv":
        text = csv_text(
            ("name", "passed", "residual", "tolerance"),
            [(r.name, r.passed, r.residual, r.tolerance) for r in results],
        )
    else:
        # timings are left out so that repeated runs are byte-identical
        suites = [{k: v for k, v in r.to_dict().items() if k != "seconds"} for r in results]
        text = dumps({"passed": passed, "suites": suites}) + "\n"
    return text, (EXIT_OK if passed else EXIT_FAILED)


def _coherent_xi(cfg, group):
    xi = parse_complex(cfg["xi"])
    zeta = parse_complex(cfg["zeta"])
    if xi is not None and zeta is not None:
        raise InvalidArgument("give either --xi or --zeta, not both")
    if xi is None and zeta is None:
        return 0j, 0j
    if xi is not None:
        return xi, algebra.displacement_params(group, xi).zeta
    r = abs(zeta)
    if group == "su11":
        if r >= 1.0:
            raise DomainError(f"su(1,1) needs |zeta| < 1, got {r}")
        xi = 0j if r == 0 else zeta / r * math.atanh(r)
    else:
        xi = 0j if r == 0 else zeta / r * math.atan(r)
    return xi, zeta


def _half_integer(value, name):
    if abs(2 * value - round(2 * value)) > 1e-12:
        raise InvalidArgument(f"{name} must be a half-integer, got {value}")
    return round(2 * value)


def cmd_coherent(cfg):
    group = cfg["group"]
    xi, zeta = _coherent_xi(cfg, group)
    if group == "su11":
        k, n = cfg["k"], cfg["n"]
        labels = {"k": k, "n": n}
    else:
        j, mu = cfg["j"], cfg["mu"]
        labels = {"j": j, "mu": mu}

    if cfg["wavefunction"]:
        grid = wavefn.polar_grid(cfg["n_rho"], cfg["n_phi"], cfg["rho_max"])
        if group == "su11":
            two_k = _half_integer(k, "k")
            if two_k < 1:
                raise InvalidArgument("wavefunctions need k >= 1/2")
            samples = wavefn.pncs_wavefunction_su11(n, two_k - 1, zeta, grid)
        else:
            two_j, two_mu = _half_integer(j, "j"), _half_integer(mu, "mu")
            samples = wavefn.pncs_wavefunction_su2((two_j - two_mu) // 2, two_mu, zeta, grid)
        rows = samples.rows()
        if cfg["format"] == "csv":
            return csv_text(("rho", "phi", "re", "im", "abs2"), rows)
        return dumps({
            "group": group,
            "labels": labels,
            "zeta": [zeta.real, zeta.imag],
            "rho": rows[:, 0], "phi": rows[:, 1], "re": rows[:, 2], "im": rows[:, 3], "abs2": rows[:, 4],
        }) + "\n"

    if group == "su11":
        amps = algebra.pncs_su11(k, n, xi, truncation=cfg["truncation"])
        index = list(range(amps.size))
    else:
        amps = algebra.pncs_su2(j, mu, xi)
        index = [-j + i for i in range(amps.size)]
    if cfg["format"] == "csv":
        rows = [(i, a.real, a.imag, abs(a) ** 2) for i, a in zip(index, amps)]
        return csv_text(("index", "re", "im", "abs2"), rows)
    return dumps({
        "group": group,
        "labels": labels,
        "xi": [xi.real, xi.imag],
        "zeta": [zeta.real, zeta.imag],
        "amplitudes": [{"index": i, "re": a.real, "im": a.imag} for i, a in zip(index, amps)],
    }) + "\n"


def matching_scan(params, beta, points=401, width=0.05):
    """``|<H>_alpha - <H>_beta|`` for the lowest states on a grid of ``|alpha|``.

    Uses ``omega = w2`` for the frequency in the matching formulas.
    """
    omega = params.omega2
    target = spectra.expval_su2(params, beta, 0, 0)
    predicted = spectra.matching_alpha(params.g, omega, beta)
    exact = spectra.matching_alpha_exact(params.g, omega, beta)
    alphas = np.linspace(predicted * (1 - width), predicted * (1 + width), points)
    gaps = [abs(complex(spectra.expval_su11(params, a, 0, 0)) - target) for a in alphas]
    best = int(np.argmin(gaps))
    return {
        "g": params.g,
        "omega": omega,
        "beta": beta,
        "alpha_predicted": predicted,
        "alpha_exact": exact,
        "alpha_scan_min": float(alphas[best]),
        "gap_at_predicted": abs(complex(spectra.expval_su11(params, predicted, 0, 0)) - target),
        "gap_at_scan_min": float(gaps[best]),
        "alpha": alphas,
        "gap": gaps,
    }


def cmd_compare(cfg):
    params = model_params(cfg)
    grid = parse_grid(cfg["g_grid"])
    if not grid or any(g < 0 for g in grid):
        raise InvalidArgument("g grid must be a nonempty list of values >= 0")
    qmax = cfg["qmax"] if cfg["qmax"] is not None else 4
    method = {"nm": "normal_mode", None: "su11"}.get(cfg["method"], cfg["method"])
    delta_sign = cfg["delta_sign"] if cfg["delta_sign"] in ("paper", "alt") else "paper"
    table = diag.discrepancy_table(params, qmax, qmax, method, grid, delta_sign, workers=max(1, cfg["workers"]))
    if cfg["format"] == "csv":
        rows = [(r.q_ab, r.q_ac, r.g, r.deviation) for r in table.rows]
        return csv_text(("q_ab", "q_ac", "g", "deviation"), rows)
    payload = table.to_dict()
    if abs(params.g) < params.omega2:
        payload["matching"] = matching_scan(params, cfg["beta"])
    return dumps(payload) + "\n"


COMMANDS = {
    "spectrum": cmd_spectrum,
    "analytic": cmd_analytic,
    "verify": cmd_verify,
    "coherent": cmd_coherent,
    "compare": cmd_compare,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve(args)
        if cfg["format"] not in ("json", "csv"):
            raise InvalidArgument(f"unknown format {cfg['format']!r}")
        result = COMMANDS[cfg["command"]](cfg)
        text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
        write_output(text, cfg["output"])
        return code
    except TCError as exc:
        print(f"tc3: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"tc3: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
