"""Batch front-end: a thin client over the quiverinv service.

Every subcommand reads local files, builds a request, and runs it against
the FastAPI app (in process by default, or a remote server via --server).
Reports are byte-reproducible for a fixed configuration and seed.

Exit codes: 0 success, 2 when any verdict in the report is undecided,
1 on errors.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from . import __version__
from .service.app import app as _app


def _post_in_process(path, payload):
    import asyncio

    async def go():
        transport = httpx.ASGITransport(app=_app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://quiverinv.local", timeout=600.0
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _post(server, path, payload):
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            resp = client.post(path, json=payload)
    else:
        resp = _post_in_process(path, payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise click.ClickException(f"{path}: {json.dumps(detail, sort_keys=True)}")
    return resp.json()


def _vector(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise click.ClickException(f"expected comma-separated integers, got {text!r}")


def _parts(values):
    out = []
    for v in values:
        if ":" in v:
            dims, mult = v.rsplit(":", 1)
            out.append({"d": _vector(dims), "multiplicity": int(mult)})
        else:
            out.append({"d": _vector(v), "multiplicity": 1})
    return out


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise click.ClickException(str(exc))


def _has_undecided(value):
    if isinstance(value, str):
        return value == "undecided"
    if isinstance(value, dict):
        return any(_has_undecided(v) for v in value.values())
    if isinstance(value, list):
        return any(_has_undecided(v) for v in value)
    return False


def _render_text(records):
    lines = []
    for title, payload in records:
        lines.append(f"== {title}")
        for key in ("tool_version", "seed"):
            if key in payload:
                lines.append(f"{key}: {payload[key]}")
        if payload.get("caps"):
            lines.append(
                "caps: " + json.dumps(payload["caps"], sort_keys=True, separators=(",", ":"))
            )
        if payload.get("caveats"):
            for c in payload["caveats"]:
                lines.append(f"caveat: {c}")
        for key in sorted(payload):
            if key in ("tool_version", "seed", "caps", "caveats"):
                continue
            value = payload[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, separators=(",", ":"))
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _emit(records, fmt):
    if fmt == "json-lines":
        for title, payload in records:
            sys.stdout.write(
                json.dumps({"record": title, **payload}, sort_keys=True, separators=(",", ":"))
                + "\n"
            )
    else:
        sys.stdout.write(_render_text(records))
    if any(_has_undecided(payload) for _, payload in records):
        sys.exit(2)


_common = [
    click.option("--server", default=None, help="Remote service URL (default: in-process)"),
    click.option("--format", "fmt", type=click.Choice(["text", "json-lines"]), default="text"),
    click.option("--seed", type=int, default=101, show_default=True),
]


def common_options(fn):
    for opt in reversed(_common):
        fn = opt(fn)
    return fn


@click.group()
@click.version_option(version=__version__)
def cli():
    """Invariant-theoretic data of bound quiver algebras."""


@cli.command("algebra-check")
@click.option("--algebra", required=True, type=click.Path(exists=True))
@click.option("--l-max", type=int, default=12, show_default=True)
@common_options
def algebra_check(algebra, l_max, server, fmt, seed):
    """Parse an algebra file, decide admissibility, report the path basis."""
    payload = {"algebra_text": _read(algebra), "l_max": l_max, "seed": seed}
    out = _post(server, "/algebra/check", payload)
    _emit([("algebra-check", out)], fmt)


@cli.command()
@click.option("--algebra", required=True, type=click.Path(exists=True))
@click.option("--d", required=True, help="Dimension vector, e.g. 1,1")
@click.option("--l-max", type=int, default=6, show_default=True)
@click.option("--weight-from", default=None, help="Build a weight from this d0")
@click.option(
    "--weight-kind",
    type=click.Choice(["left", "right", "difference"]),
    default="difference",
    show_default=True,
)
@common_options
def forms(algebra, d, l_max, weight_from, weight_kind, server, fmt, seed):
    """Euler matrix, Tits form value and class, optional weight construction."""
    payload = {
        "algebra_text": _read(algebra),
        "d": _vector(d),
        "l_max": l_max,
        "weight_kind": weight_kind,
        "seed": seed,
    }
    if weight_from:
        payload["weight_from"] = _vector(weight_from)
    out = _post(server, "/forms/report", payload)
    _emit([("forms", out)], fmt)


@cli.command()
@click.option("--algebra", required=True, type=click.Path(exists=True))
@click.option("--theta", required=True)
@click.option("--rep", "reps", multiple=True, type=click.Path(exists=True))
@click.option("--jh", is_flag=True, help="Also compute stable factors per module")
@click.option("--decompose", is_flag=True, help="Theta-stable decomposition over samples")
@click.option("--moduli-dim", is_flag=True, help="Moduli dimension report over samples")
@click.option("--d", default=None, help="Dimension vector for sampling")
@click.option("--samples", type=int, default=5, show_default=True)
@click.option("--zero", default=None, help="Comma-separated arrows forced to zero")
@common_options
def stability(algebra, theta, reps, jh, decompose, moduli_dim, d, samples, zero, server, fmt, seed):
    """King test per module; optional JH factors, decomposition, moduli dimension."""
    text = _read(algebra)
    theta_v = _vector(theta)
    records = []
    for path in reps:
        payload = {
            "algebra_text": text,
            "rep_text": _read(path),
            "theta": theta_v,
            "seed": seed,
        }
        out = _post(server, "/stability/king", payload)
        records.append((f"king {path}", out))
        if jh and out["status"] in ("stable", "strictly semistable"):
            records.append((f"jh {path}", _post(server, "/stability/jh", payload)))
    if decompose or moduli_dim:
        payload = {
            "algebra_text": text,
            "theta": theta_v,
            "samples": samples,
            "seed": seed,
        }
        if d:
            payload["d"] = _vector(d)
        if zero:
            payload["zero_arrows"] = zero.split(",")
        if reps and not d:
            payload["rep_texts"] = [_read(p) for p in reps]
        if decompose:
            records.append(
                ("decomposition", _post(server, "/stability/decomposition", payload))
            )
        if moduli_dim:
            records.append(
                ("moduli-dimension", _post(server, "/stability/moduli-dimension", payload))
            )
    if not records:
        raise click.ClickException("nothing to do: pass --rep, --decompose or --moduli-dim")
    _emit(records, fmt)


@cli.command()
@click.option("--algebra", required=True, type=click.Path(exists=True))
@click.option("--theta", required=True)
@click.option("--d", default=None)
@click.option("--mmax", type=int, default=3, show_default=True)
@click.option("--degree-cap", type=int, default=24, show_default=True)
@click.option("--part", "parts", multiple=True, help="Factor 'd:multiplicity' for the factorization check")
@click.option("--classify", is_flag=True, help="Moduli-shape prediction from --part data")
@click.option("--zero", default=None)
@common_options
def si(algebra, theta, d, mmax, degree_cap, parts, classify, zero, server, fmt, seed):
    """Semi-invariant Hilbert series, factorization checks, moduli predictions."""
    text = _read(algebra)
    theta_v = _vector(theta)
    records = []
    if d:
        payload = {
            "algebra_text": text,
            "d": _vector(d),
            "theta": theta_v,
            "m_max": mmax,
            "degree_cap": degree_cap,
            "seed": seed,
        }
        records.append(("si-series", _post(server, "/si/series", payload)))
    if parts and not classify:
        payload = {
            "algebra_text": text,
            "theta": theta_v,
            "parts": _parts(parts),
            "m_max": mmax,
            "degree_cap": degree_cap,
            "seed": seed,
        }
        if zero:
            payload["zero_arrows"] = zero.split(",")
        records.append(("si-factorization", _post(server, "/si/factorization", payload)))
    if classify:
        if not parts:
            raise click.ClickException("--classify needs --part entries")
        payload = {
            "algebra_text": text,
            "theta": theta_v,
            "decomposition": _parts(parts),
            "seed": seed,
        }
        if d:
            payload["d"] = _vector(d)
        records.append(("si-classify", _post(server, "/si/classify", payload)))
    if not records:
        raise click.ClickException("nothing to do: pass --d and/or --part")
    _emit(records, fmt)


@cli.command()
@click.option("--algebra", required=True, type=click.Path(exists=True))
@click.option("--summand", "summands", multiple=True, required=True, type=click.Path(exists=True))
@click.option("--theta", default=None)
@click.option("--transport", "transport_rep", default=None, type=click.Path(exists=True))
@click.option("--torsion", "torsion_rep", default=None, type=click.Path(exists=True))
@click.option("--case", type=click.Choice(["auto", "case1", "case2"]), default="auto")
@click.option("--bound", type=int, default=4, show_default=True)
@click.option("--samples", type=int, default=3, show_default=True)
@click.option("--zero", default=None)
@click.option("--emit-context", is_flag=True, help="Include the serialized context")
@common_options
def tilt(algebra, summands, theta, transport_rep, torsion_rep, case, bound, samples,
         zero, emit_context, server, fmt, seed):
    """Build a tilting context; optionally test weights and transport modules."""
    text = _read(algebra)
    summand_texts = [_read(p) for p in summands]
    base = {"algebra_text": text, "summand_texts": summand_texts, "seed": seed}
    records = []
    ctx_out = _post(server, "/tilt/context", base)
    if not emit_context:
        ctx_out = {k: v for k, v in ctx_out.items() if k != "context_text"}
    records.append(("tilt-context", ctx_out))
    if torsion_rep:
        payload = dict(base)
        payload["rep_text"] = _read(torsion_rep)
        records.append(("tilt-torsion", _post(server, "/tilt/torsion", payload)))
    if theta:
        payload = dict(base)
        payload.update(
            theta=_vector(theta), bound=bound, samples_per_vector=samples
        )
        if zero:
            payload["zero_arrows"] = zero.split(",")
        records.append(
            ("tilt-well-positioned", _post(server, "/tilt/well-positioned", payload))
        )
        if transport_rep:
            payload = dict(payload)
            payload["rep_text"] = _read(transport_rep)
            payload["case"] = case
            records.append(("tilt-transport", _post(server, "/tilt/transport", payload)))
    _emit(records, fmt)


@cli.command()
@click.option("--algebra", required=True, type=click.Path(exists=True))
@click.option("--d", required=True)
@click.option("--samples", type=int, default=5, show_default=True)
@click.option("--zero", default=None)
@click.option("--predict", is_flag=True, help="Rational-invariant prediction from the result")
@common_options
def decomp(algebra, d, samples, zero, predict, server, fmt, seed):
    """Sampled generic decomposition and classification predictions."""
    text = _read(algebra)
    payload = {
        "algebra_text": text,
        "d": _vector(d),
        "samples": samples,
        "seed": seed,
    }
    if zero:
        payload["zero_arrows"] = zero.split(",")
    out = _post(server, "/decomp/generic", payload)
    records = [("decomp", out)]
    if predict:
        pred_payload = {
            "algebra_text": text,
            "decomposition": [
                {"d": p["d"], "multiplicity": p["multiplicity"]} for p in out["parts"]
            ],
            "seed": seed,
        }
        records.append(("predict", _post(server, "/decomp/predict", pred_payload)))
    _emit(records, fmt)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8787, show_default=True)
def serve(host, port):
    """Run the service under uvicorn."""
    import uvicorn

    uvicorn.run("quiverinv.service.app:app", host=host, port=port)


def main(argv=None):
    try:
        return cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.exceptions.Abort:
        sys.exit(1)


if __name__ == "__main__":
    main()
