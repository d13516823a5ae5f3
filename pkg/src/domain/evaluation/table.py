from .entity import BaselineReport, EstimateReport
from src.domain.placement import PlacementSummary

# Published figures for the Parzival tradition (principal BRNN configuration).
PARZIVAL_REFERENCE = {
    "correct predictions": "111/240 (0.46)",
    "average deviation": "0.6 (SD: 0.6)",
    "max dist": "3",
    "hitrate localizations": "9.5/12 (0.79)",
    "average radius": "0.23",
    "baseline correct predictions": "40/240 (0.17)",
    "baseline average deviation": "1.85 (SD: 1.4)",
    "baseline max dist": "5",
}


def _fmt_fraction(num: float, den: int) -> str:
    num_text = f"{num:g}" if num != int(num) else str(int(num))
    return f"{num_text}/{den} ({num / den:.2f})"


def results_rows(
    estimates: EstimateReport | None,
    placement: PlacementSummary | None,
    baseline: BaselineReport | None,
) -> list[tuple[str, str, str]]:
    rows: list[tuple[str, str, str]] = []
    if estimates is not None:
        rows.append(("correct predictions", _fmt_fraction(estimates.correct, estimates.n), ""))
        rows.append(("average deviation", f"{estimates.avg_deviation:.2f} (SD: {estimates.sd:.2f})", ""))
        rows.append(("max dist", str(estimates.max_dist), "edges"))
    if placement is not None:
        note = ""
        if placement.misses:
            radii = ", ".join(f"{float(r):g}" for r in placement.miss_radii)
            note = f"distance of {placement.misses} misplaced from parent: {radii}"
        rows.append(("hitrate localizations", _fmt_fraction(float(placement.hits), placement.leaves), note))
        rows.append(("average radius", f"{float(placement.mean_radius):.2f}", "around true parent"))
    if baseline is not None:
        note = f"max {baseline.max_correct}"
        if baseline.empirical_p is not None:
            note += f", empirical p = {baseline.empirical_p:.4g}"
        rows.append((
            "baseline correct predictions",
            _fmt_fraction(round(baseline.mean_correct), baseline.n),
            note,
        ))
        rows.append((
            "baseline average deviation",
            f"{baseline.mean_avg_deviation:.2f} (SD: {baseline.mean_sd:.2f})",
            "",
        ))
        rows.append((
            "baseline max dist",
            str(baseline.max_dist_overall),
            f"reached in {baseline.max_dist_hits} of {baseline.iterations} iterations",
        ))
    return rows


def render_results_table(
    estimates: EstimateReport | None,
    placement: PlacementSummary | None,
    baseline: BaselineReport | None,
    reference: dict[str, str] | None = None,
) -> str:
    header = ["Feature", "Value", "Note"]
    body = [list(row) for row in results_rows(estimates, placement, baseline)]
    if reference is not None:
        header.insert(2, "Reference")
        for row in body:
            row.insert(2, reference.get(row[0], ""))

    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]

    def line(cells: list[str]) -> str:
        return " | ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip()

    out = [line(header), "-+-".join("-" * w for w in widths)]
    out.extend(line(row) for row in body)
    return "\n".join(out) + "\n"
