"""Command-line client for the study service.

By default each command talks to an in-process instance of the FastAPI app
over an ASGI transport (no socket, same code path as a deployed server);
pass --server URL to target a running instance instead.
"""

from __future__ import annotations

import asyncio
import json
from pathlib import Path
from typing import Optional

import click
import httpx

from .experiments.report import ExperimentReport, write_report


class _InProcessTransport(httpx.BaseTransport):
    """Synchronous bridge to the ASGI app (no socket, same code path as a server)."""

    def __init__(self, app) -> None:
        self._transport = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        async def _go() -> httpx.Response:
            response = await self._transport.handle_async_request(request)
            await response.aread()
            return response

        response = asyncio.run(_go())
        return httpx.Response(
            status_code=response.status_code,
            headers=response.headers,
            content=response.content,
            request=request,
        )


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    from .service.app import create_app

    transport = _InProcessTransport(create_app())
    return httpx.Client(transport=transport, base_url="http://torusqi.local", timeout=600.0)


def _study_options(fn):
    fn = click.option("--config", "config_path", required=True,
                      type=click.Path(exists=True, dir_okay=False),
                      help="Study config (JSON).")(fn)
    fn = click.option("--out", "out_dir", default=".", type=click.Path(file_okay=False),
                      help="Output directory.")(fn)
    fn = click.option("--format", "fmt", default="csv",
                      type=click.Choice(["csv", "json"]), help="Output format.")(fn)
    fn = click.option("--seed", type=int, default=None, help="Override the config seed.")(fn)
    fn = click.option("--oversample", type=int, default=None,
                      help="Override the config oversampling factor.")(fn)
    fn = click.option("--server", default=None,
                      help="Service URL; defaults to an in-process instance.")(fn)
    return fn


def _run_study(endpoint, config_path, out_dir, fmt, seed, oversample, server):
    config = json.loads(Path(config_path).read_text())
    payload = {"config": config, "seed": seed, "oversample": oversample}
    with _client(server) as client:
        resp = client.post(f"/v1/{endpoint}", json=payload)
        if resp.status_code != 200:
            raise click.ClickException(f"{resp.status_code}: {resp.text}")
        data = resp.json()
    report = ExperimentReport(metadata=data["metadata"], rows=data["rows"])
    label = data["metadata"]["config"]["label"]
    path = write_report(report, out_dir, label, fmt)
    click.echo(f"wrote {path}")
    for row in data["rows"]:
        if row.get("kind") == "slope":
            click.echo(
                f"  p={row['p']}: decay order {row['slope']} "
                f"(residual {row['residual']}, {row['tag']})"
            )
        elif row.get("kind") == "bracket":
            click.echo(
                f"  p={row['p']} {row['comparator']} {row['tag']}: {row['ratio']}"
            )


@click.group()
def main() -> None:
    """Periodic quasi-interpolation studies."""


@main.command()
@_study_options
def ratecheck(config_path, out_dir, fmt, seed, oversample, server):
    """Approximation errors across levels with a decay-order fit."""
    _run_study("ratecheck", config_path, out_dir, fmt, seed, oversample, server)


@main.command()
@_study_options
def equivcheck(config_path, out_dir, fmt, seed, oversample, server):
    """Error-to-comparator ratios with min/max brackets."""
    _run_study("equivcheck", config_path, out_dir, fmt, seed, oversample, server)


@main.command()
@_study_options
def symbolcheck(config_path, out_dir, fmt, seed, oversample, server):
    """Compatibility radius/order and condition-multiplier bounds."""
    _run_study("symbolcheck", config_path, out_dir, fmt, seed, oversample, server)


@main.command()
@click.option("--out", "out_dir", default=".", type=click.Path(file_okay=False),
              help="Output directory.")
@click.option("--format", "fmt", default="csv", type=click.Choice(["csv", "json"]),
              help="Output format.")
@click.option("--example", "examples", multiple=True,
              help="Subset of canned examples to run (default: all).")
@click.option("--server", default=None,
              help="Service URL; defaults to an in-process instance.")
def reproduce(out_dir, fmt, examples, server):
    """Run the canned example studies and write one report per example."""
    payload = {"examples": list(examples) or None}
    with _client(server) as client:
        resp = client.post("/v1/reproduce", json=payload)
        if resp.status_code != 200:
            raise click.ClickException(f"{resp.status_code}: {resp.text}")
        data = resp.json()
    for name, body in sorted(data["reports"].items()):
        report = ExperimentReport(metadata=body["metadata"], rows=body["rows"])
        path = write_report(report, out_dir, name, fmt)
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
