"""End-to-end validation harness: distribution and metric agreement reports.

Runs the counter-based simulator against the analytic model and prints the
Kolmogorov-Smirnov distance, the moment balance, and per-SNR outage/capacity
intervals.  This is a desk-scale rehearsal of the acceptance suite.
"""

from fluidris import McConfig, validate_distribution, validate_metrics
from fluidris.cli import _resolve_config
from fluidris.scenario import build_scenario, load_scenario

sc = load_scenario(_resolve_config("fris36"))
bs = build_scenario(sc)
mc = McConfig(trials=150_000, seed=33)

dist = validate_distribution(bs.corr, bs.phase, bs.mixture, mc)
print(f"KS distance: {dist.ks_distance:.5f}")
print(f"mean:  simulated {dist.mean_mc:.4f}  analytic {dist.mean_analytic:.4f}")
print(f"var:   simulated {dist.var_mc:.2f}  analytic {dist.var_analytic:.2f}")

rep = validate_metrics(bs.corr, bs.phase, bs.mixture, sc.budget, [30, 40, 50, 60], mc)
print("\n snr_dB  op_exact    op_mc       wilson_95            ec_exact   ec_mc")
for r in rep.rows:
    print(
        f"  {r.snr_db:5.0f}  {r.op_exact:.4e} {r.op_mc:.4e} "
        f"[{r.wilson_lo:.4e},{r.wilson_hi:.4e}]  {r.ec_exact:8.5f}  {r.ec_mc:8.5f}"
    )
