import os
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
from bounds.function import line
from bounds.minimize import curve_samples

MIN_SAMPLES = 100


def plot_fig1(beta: float, samples: int, out_path: str) -> str:
    """SVG with the horizontal line y = 1 - e^{-beta} and the z1 = 0 curve over [0, 1]."""
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    xs, ys = curve_samples(beta, samples)
    level = line(beta)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, ys, color="purple", label="curve")
    ax.axhline(level, color="red", label=f"1 - e^(-{beta:g}) = {level:.4f}")
    ax.set_xlim(0.0, 1.0)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"beta = {beta:g}, min = {min(ys + [level]):.4f}")
    ax.legend(loc="upper left")

    folder = os.path.dirname(os.path.abspath(out_path))
    os.makedirs(folder, exist_ok=True)
    fig.savefig(out_path, format="svg")
    plt.close(fig)
    return out_path
