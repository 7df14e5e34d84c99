import json

from fastmcp import FastMCP

from config.settings import CROSS_CHECK_ORDER
from services.asymptotics_service import asymptotic_report
from services.dp_service import dp_series
from services.export_service import asymptotic_payload, render_verification, series_payload
from services.kernel_service import closed_form as closed_form_series
from services.verification_service import run_verification

mcp = FastMCP("S-Motzkin paths")


def series_coefficients(model: str, layer: str, level: int = 0, order: int = 20):
    """Exact counts of paths ending in one state (model, layer, level) for lengths 0..order."""
    return series_payload(dp_series(model, layer, level, order), model=model, label=f"{layer}{level}")


def closed_form(key: str, order: int = 20):
    """Closed-form series by key, e.g. cata.f0, air.rho or cata.fk:3."""
    return series_payload(closed_form_series(key, order), key=key)


def verify_all(order: int = CROSS_CHECK_ORDER, brute_cap: int = 10):
    """Run the verification suite and return every check with its status."""
    report = run_verification(order=order, brute_cap=brute_cap)
    return json.loads(render_verification(report, "json"))


def asymptotic_constants():
    """Pole location, growth constants and both amplitude conventions."""
    return asymptotic_payload(asymptotic_report(include_empirical=False))


for tool in (series_coefficients, closed_form, verify_all, asymptotic_constants):
    mcp.tool(tool)

if __name__ == "__main__":
    mcp.run(transport="stdio")
