"""Standalone SVG rendering of tables produced by the CLI."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "h2entangle"
matplotlib.rcParams["svg.fonttype"] = "path"


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def line_plot(path, x, series, xlabel, ylabel="", title="", thick=None):
    """``series`` maps label -> y array; the label in ``thick`` is drawn heavier."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, y in series.items():
        ax.plot(x, y, label=label, lw=2.5 if label == thick else 1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(series) <= 12:
        ax.legend(fontsize="small")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    _save(fig, path)


def contour_plot(path, b_values, r_values, grid, levels, title=""):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    cs = ax.contourf(b_values, r_values, grid, levels=levels, extend="both", cmap="viridis")
    ax.contour(b_values, r_values, grid, levels=levels, colors="k", linewidths=0.4)
    fig.colorbar(cs, ax=ax)
    ax.set_xlabel("B (Ry)")
    ax.set_ylabel("r (Bohr)")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    _save(fig, path)
