"""
Figure datasets
===============

Write the CSV datasets and JSON peak reports for the standard parameter
sets, then plot one of them if matplotlib is installed.
"""

# %%
import csv
import json
import sys
from pathlib import Path

from narrowband import render_figure

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figure_data")
for fig in ("fig2", "fig3", "fig4", "fig5"):
    res = render_figure(fig, out)
    print(f"{fig}: {len(res['csv'])} curves -> {res['report']}")

# %%
report = json.loads((out / "fig5_report.json").read_text())
for c in report["curves"]:
    narrow = min(c["peaks"], key=lambda p: p["center"])
    print(f"{c['label']:<36} f_c {c['f_c']:8.4f}  height {narrow['amplitude']:.4f}  FWHM {narrow['fwhm']:.3e}")

# %%
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

fig, ax = plt.subplots()
for c in report["curves"]:
    if c["reading"] != "rate":
        continue
    with open(out / c["file"]) as fh:
        rows = list(csv.DictReader(fh))
    ax.plot([float(r["delta_norm"]) for r in rows], [float(r["R"]) for r in rows], label=c["label"])
ax.set_xlim(-0.5, 0.5)
ax.set_xlabel("(Delta - f_c) / Gamma'")
ax.set_ylabel("R")
ax.legend()
fig.savefig(out / "fig5_rate_reading.png", dpi=120)
print("wrote", out / "fig5_rate_reading.png")
