"""Figure rendering for the report-producing commands.

Matplotlib is imported lazily so that library use never requires a
plotting backend; the CLI calls these helpers to drop PNG files next to
the delimited output.
"""

from __future__ import annotations

from .comparison import SurvivalOverlay
from .simulation import StudyResult


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_survival_plot(overlay: SurvivalOverlay, path, title: str = "") -> None:
    """Empirical survival step with the fitted curves overlaid, log-x."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.step(overlay.step_t, overlay.step_survival, where="post", color="black",
            lw=1.8, label="empirical")
    for name, surv in overlay.fitted.items():
        ax.plot(overlay.grid, surv, lw=1.2, label=name)
    ax.set_xscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("survival")
    ax.set_ylim(-0.02, 1.02)
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_study_plot(result: StudyResult, path) -> None:
    """MRE and MSE against sample size, one panel per parameter."""
    plt = _plt()
    sizes = list(result.config.sample_sizes)
    methods = list(result.config.methods)
    fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)
    for col, pname in enumerate(("lam", "alpha")):
        for m in methods:
            mre = [result.row(m, n, pname).mre for n in sizes]
            mse = [result.row(m, n, pname).mse for n in sizes]
            axes[0, col].plot(sizes, mre, marker="o", ms=3, lw=1, label=m)
            axes[1, col].plot(sizes, mse, marker="o", ms=3, lw=1, label=m)
        axes[0, col].axhline(1.0, color="gray", lw=0.8, ls="--")
        axes[1, col].axhline(0.0, color="gray", lw=0.8, ls="--")
        axes[0, col].set_title(f"MRE ({pname})")
        axes[1, col].set_title(f"MSE ({pname})")
        axes[1, col].set_xlabel("n")
    axes[0, 0].legend(frameon=False, fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
