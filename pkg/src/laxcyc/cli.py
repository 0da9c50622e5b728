"""Command-line frontend. A thin client: every subcommand calls the HTTP
service (in-process by default, or a remote --server URL), formats the
response for humans, and writes machine-readable JSON/CSV artifacts.

Exit codes: 0 all checks pass, 1 a check failed (or the computation was
rejected as unstable/ambiguous), 2 bad input, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys


def _make_client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(client, path: str, payload: dict):
    resp = client.post(path, json=payload)
    if resp.status_code >= 500:
        print(f"internal error: {resp.text}", file=sys.stderr)
        sys.exit(3)
    if resp.status_code == 409:
        print(f"rejected: {resp.json().get('detail', resp.text)}", file=sys.stderr)
        sys.exit(1)
    if resp.status_code >= 400:
        print(f"bad input: {resp.json().get('detail', resp.text)}", file=sys.stderr)
        sys.exit(2)
    return resp.json()


def _write_json(path: str | None, data: dict):
    if path:
        with open(path, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _write_text(path: str | None, text: str):
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as ex:
        print(f"bad input: cannot read {path}: {ex}", file=sys.stderr)
        sys.exit(2)


def _parse_e_arg(value: str | None):
    if value in (None, "omega", "zero"):
        return value
    try:
        return [int(v) for v in value.split(",")]
    except ValueError:
        print(f"bad input: --e must be 'omega', 'zero' or a comma list, got {value!r}", file=sys.stderr)
        sys.exit(2)


def _seed(args) -> int:
    env = os.environ.get("LAXCYC_SEED")
    if env is not None:
        return int(env)
    return args.seed


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="laxcyc",
        description="polynomial-matrix integrable systems: verification and certificates",
    )
    ap.add_argument("--server", help="remote service URL (default: run in-process)")
    sub = ap.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate-e", help="the torsion-class representative set E")
    p_enum.add_argument("--p", type=int, required=True)
    p_enum.add_argument("--out")

    p_canon = sub.add_parser("canonicalize", help="canonical E-representative of a residue vector")
    p_canon.add_argument("--p", type=int, required=True)
    p_canon.add_argument("--e", required=True)
    p_canon.add_argument("--out")

    p_fb = sub.add_parser("fixed-basis", help="monomial basis of a fixed locus")
    p_fb.add_argument("--p", type=int, required=True)
    p_fb.add_argument("--d", type=int, required=True)
    p_fb.add_argument("--e", default="omega")
    p_fb.add_argument("--out")

    p_cl = sub.add_parser("classify", help="torsion class of a constant matrix")
    p_cl.add_argument("--p", type=int, required=True)
    p_cl.add_argument("--matrix", required=True, help="JSON file: p x p scalar grid")
    p_cl.add_argument("--out")

    p_cj = sub.add_parser("conjugator", help="solve tau(L) = g L g^{-1} for g")
    p_cj.add_argument("--matrix", required=True, help="polynomial-matrix JSON file")
    p_cj.add_argument("--out")

    p_bt = sub.add_parser("bracket-table", help="CSV table of coordinate brackets")
    p_bt.add_argument("--p", type=int, required=True)
    p_bt.add_argument("--q", type=int, required=True)
    p_bt.add_argument("--mu", type=int, required=True)
    p_bt.add_argument("--out", help="CSV output path")

    p_vf = sub.add_parser("verify", help="run a verification suite")
    p_vf.add_argument("suite", choices=["symmetry", "poisson", "flows", "reduction", "spectral", "all"])
    p_vf.add_argument("--p", type=int)
    p_vf.add_argument("--q", type=int)
    p_vf.add_argument("--d", type=int)
    p_vf.add_argument("--d-prime", type=int, dest="d_prime")
    p_vf.add_argument("--e")
    p_vf.add_argument("--samples", type=int)
    p_vf.add_argument("--seed", type=int, default=0)
    p_vf.add_argument("--out")

    p_fl = sub.add_parser("flow", help="integrate a Lax flow and monitor invariants")
    p_fl.add_argument("--matrix", required=True)
    p_fl.add_argument("--i", type=int, required=True)
    p_fl.add_argument("--j", type=int, required=True)
    p_fl.add_argument("--t-end", type=float, default=1.0, dest="t_end")
    p_fl.add_argument("--step", type=float, default=1e-3)
    p_fl.add_argument("--e", help="enable fixed-locus tangency monitoring")
    p_fl.add_argument("--csv-out", dest="csv_out")
    p_fl.add_argument("--out")
    p_fl.add_argument("--tolerance", type=float, default=1e-8)

    p_sp = sub.add_parser("spectral", help="spectral-curve certificates")
    src = p_sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix")
    src.add_argument("--curve")
    p_sp.add_argument("--d-prime", type=int, dest="d_prime")
    p_sp.add_argument("--e")
    p_sp.add_argument("--branch-csv", dest="branch_csv")
    p_sp.add_argument("--out")

    p_sv = sub.add_parser("serve", help="run the HTTP service")
    p_sv.add_argument("--host", default="127.0.0.1")
    p_sv.add_argument("--port", type=int, default=8000)

    args = ap.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    client = _make_client(args.server)
    try:
        return _dispatch(args, client)
    finally:
        client.close()


def _dispatch(args, client) -> int:
    if args.command == "enumerate-e":
        data = _post(client, "/api/enumerate-e", {"p": args.p})
        print(f"|E| = {data['count']} (formula: {data['formula_count']}) for p = {data['p']}")
        for e in data["classes"]:
            print("  " + ",".join(str(v) for v in e))
        _write_json(args.out, data)
        return 0 if data["count"] == data["formula_count"] else 1

    if args.command == "canonicalize":
        e = _parse_e_arg(args.e)
        data = _post(client, "/api/canonicalize", {"p": args.p, "e": e})
        print(",".join(str(v) for v in data["e"]))
        _write_json(args.out, data)
        return 0

    if args.command == "fixed-basis":
        data = _post(
            client,
            "/api/fixed-basis",
            {"p": args.p, "d": args.d, "e": _parse_e_arg(args.e)},
        )
        print(f"dim M^Delta = {data['dim']} (e = {data['e']}, d = {data['d']})")
        for (i, j, k) in data["basis"]:
            print(f"  ({i},{j}) x^{k}")
        _write_json(args.out, data)
        return 0

    if args.command == "classify":
        grid = _load_json(args.matrix)
        data = _post(client, "/api/classify-torsion", {"p": args.p, "matrix": grid})
        print("e class:", ",".join(str(v) for v in data["e"]))
        _write_json(args.out, data)
        return 0

    if args.command == "conjugator":
        mat = _load_json(args.matrix)
        data = _post(client, "/api/conjugator", {"matrix": mat})
        print("status:", data["status"])
        if data["status"] == "symmetric":
            print("e class:", ",".join(str(v) for v in data["e"]))
        _write_json(args.out, data)
        return 0

    if args.command == "bracket-table":
        data = _post(client, "/api/bracket-table", {"p": args.p, "q": args.q, "mu": args.mu})
        if args.out:
            _write_text(args.out, data["csv"])
            print(f"{data['rows']} brackets written to {args.out}")
        else:
            print(data["csv"], end="")
        return 0

    if args.command == "verify":
        params = {}
        for key in ("p", "q", "d", "d_prime", "samples"):
            v = getattr(args, key, None)
            if v is not None:
                params[key] = v
        if args.e is not None:
            params["e"] = _parse_e_arg(args.e)
        data = _post(
            client,
            "/api/verify",
            {"suite": args.suite, "seed": _seed(args), "params": params},
        )
        for c in data["checks"]:
            print(f"{c['verdict']:7s} {c['name']} [{c['mode']}, tol={c['tolerance']}]")
            if c["verdict"] == "FAIL" and "repro" in c:
                print(f"        repro: {c['repro']}")
        s = data["summary"]
        print(f"summary: {s['pass']} pass, {s['fail']} fail, {s['unknown']} unknown ({data['timing_s']}s)")
        _write_json(args.out, data)
        return 0 if s["fail"] == 0 and s["unknown"] == 0 else 1

    if args.command == "flow":
        mat = _load_json(args.matrix)
        payload = {
            "matrix": mat,
            "i": args.i,
            "j": args.j,
            "t_end": args.t_end,
            "step": args.step,
        }
        if args.e is not None:
            e = _parse_e_arg(args.e)
            if isinstance(e, str):
                print("bad input: --e for flow must be a comma list", file=sys.stderr)
                return 2
            payload["e"] = e
        data = _post(client, "/api/flow", payload)
        rep = data["report"]
        print(f"steps: {rep['steps']}, max drift: {rep['max_drift']:.3e} (tolerance {args.tolerance:g})")
        if "fixed_locus_deviation" in rep:
            print(f"fixed-locus deviation: {rep['fixed_locus_deviation']:.3e}")
        _write_text(args.csv_out, data["csv"])
        _write_json(args.out, rep)
        ok = rep["max_drift"] <= args.tolerance
        if "fixed_locus_deviation" in rep:
            ok = ok and rep["fixed_locus_deviation"] <= args.tolerance
        print("verdict:", "PASS" if ok else "FAIL")
        return 0 if ok else 1

    if args.command == "spectral":
        payload = {}
        if args.matrix:
            payload["matrix"] = _load_json(args.matrix)
        if args.curve:
            payload["curve"] = _load_json(args.curve)
        if args.d_prime is not None:
            payload["d_prime"] = args.d_prime
        if args.e is not None:
            payload["e"] = _parse_e_arg(args.e)
        data = _post(client, "/api/spectral", payload)
        if data.get("quotient") == "NotInvariant":
            print("char poly is not x^p-invariant: no quotient curve")
            _write_json(args.out, data)
            return 1
        print(f"p = {data['p']}, d' = {data['d_prime']}")
        print(f"V-membership: {data['v_member']}; Q(0,y) squarefree: {data['q0_squarefree']}; Q(inf,y) squarefree: {data['qinf_squarefree']}")
        print(f"genus: quotient {data['genus_quotient']}, total {data['genus_total']}; Riemann-Hurwitz ok: {data['riemann_hurwitz_ok']}")
        print(f"irreducibility: {data['cert']['verdict']} ({data['cert']['method']})")
        branch = data.get("branch", {})
        if "f_branch_count" in branch:
            print(f"branch points of the quotient cover: {branch['f_branch_count']}")
        if "diagram_commutes" in data:
            print(f"trace diagram commutes: {data['diagram_commutes']}")
        _write_json(args.out, data)
        if args.branch_csv and "branch_csv" in data:
            _write_text(args.branch_csv, data["branch_csv"])
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
