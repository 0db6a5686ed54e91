//! Figure presets: the command line that produces each figure's data and a
//! matplotlib script that renders it from the CSV.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Scan CSV over (α, γ) as a colour map, with an optional level line.
    Heatmap { level: Option<&'static str> },
    /// Scan CSV at a single γ as a curve against α.
    Curve,
    /// Gap CSV: Δ_N against 1/N per (α, γ) series, with the least-squares line.
    GapVsInverseN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Figure {
    pub id: &'static str,
    pub title: &'static str,
    /// Arguments to the `xychain` binary, without the output options.
    pub command: &'static str,
    pub kind: PlotKind,
}

pub const FIGURES: &[Figure] = &[
    Figure {
        id: "2",
        title: "Ground-state energy map",
        command: "scan --quantity energy --alpha 0:2:201 --gamma -1:1:201",
        kind: PlotKind::Heatmap { level: Some("-0.5") },
    },
    Figure {
        id: "3a",
        title: "Magnetization at gamma = 1/3",
        command: "scan --quantity magnetization --alpha 0:2:801 --gamma 0.3333333333333333:0.3333333333333333:1",
        kind: PlotKind::Curve,
    },
    Figure {
        id: "3b",
        title: "Susceptibility at gamma = 1/3",
        command: "scan --quantity susceptibility --alpha 0:2:801 --gamma 0.3333333333333333:0.3333333333333333:1",
        kind: PlotKind::Curve,
    },
    Figure {
        id: "4a",
        title: "Open-chain gap against N, weak field",
        command: "gap --boundary open --point 0.8,0.6 --point 0.9,0.8 --n-min 50 --n-max 1000 --n-count 10",
        kind: PlotKind::GapVsInverseN,
    },
    Figure {
        id: "4b",
        title: "Open-chain gap against N, strong field",
        command: "gap --boundary open --point 1.5,0.6 --point 1.3,0.5 --n-min 50 --n-max 1000 --n-count 10",
        kind: PlotKind::GapVsInverseN,
    },
    Figure {
        id: "5a",
        title: "Open-chain gap, N = 5",
        command: "scan --quantity gap_open_5 --alpha 0:1.5:301 --gamma 0:1:101",
        kind: PlotKind::Heatmap { level: None },
    },
    Figure {
        id: "5b",
        title: "Open-chain gap, N = 10",
        command: "scan --quantity gap_open_10 --alpha 0:1.5:301 --gamma 0:1:101",
        kind: PlotKind::Heatmap { level: None },
    },
    Figure {
        id: "5c",
        title: "Open-chain gap, N = 20",
        command: "scan --quantity gap_open_20 --alpha 0:1.5:301 --gamma 0:1:101",
        kind: PlotKind::Heatmap { level: None },
    },
    Figure {
        id: "5d",
        title: "Open-chain gap, N = 50",
        command: "scan --quantity gap_open_50 --alpha 0:1.5:301 --gamma 0:1:101",
        kind: PlotKind::Heatmap { level: None },
    },
];

pub fn figure(id: &str) -> Option<&'static Figure> {
    FIGURES.iter().find(|f| f.id == id)
}

/// A standalone Python script that reads `csv_path` and writes `image_path`.
pub fn plot_script(fig: &Figure, csv_path: &str, image_path: &str) -> String {
    let body = match fig.kind {
        PlotKind::Heatmap { level } => {
            let contour =
                level.map_or(String::new(), |l| format!("cs = ax.contour(A, G, V, levels=[{l}], colors='white')\nax.clabel(cs)\n"));
            format!(
                "rows = [r for r in load() if r['status'] == 'ok']\n\
                 alphas = sorted({{float(r['alpha']) for r in rows}})\n\
                 gammas = sorted({{float(r['gamma']) for r in rows}})\n\
                 V = np.full((len(gammas), len(alphas)), np.nan)\n\
                 ia = {{a: i for i, a in enumerate(alphas)}}\n\
                 ig = {{g: i for i, g in enumerate(gammas)}}\n\
                 for r in rows:\n    V[ig[float(r['gamma'])], ia[float(r['alpha'])]] = float(r['value'])\n\
                 A, G = np.meshgrid(alphas, gammas)\n\
                 fig, ax = plt.subplots()\n\
                 m = ax.pcolormesh(A, G, V, shading='auto')\n\
                 fig.colorbar(m, ax=ax, label=rows[0]['quantity'])\n\
                 {contour}\
                 ax.set_xlabel('alpha')\nax.set_ylabel('gamma')\n"
            )
        }
        PlotKind::Curve => "rows = [r for r in load() if r['status'] == 'ok']\n\
             x = [float(r['alpha']) for r in rows]\n\
             y = [float(r['value']) for r in rows]\n\
             fig, ax = plt.subplots()\n\
             ax.plot(x, y)\n\
             ax.set_xlabel('alpha')\nax.set_ylabel(rows[0]['quantity'])\n"
            .to_string(),
        PlotKind::GapVsInverseN => "series = {}\n\
             for r in load():\n    series.setdefault((r['alpha'], r['gamma']), []).append((int(r['n']), float(r['gap'])))\n\
             fig, ax = plt.subplots()\n\
             for (a, g), pts in series.items():\n\
             \x20   x = np.array([1.0 / n for n, _ in pts])\n\
             \x20   y = np.array([d for _, d in pts])\n\
             \x20   slope, icpt = np.polyfit(x, y, 1)\n\
             \x20   ax.plot(x, y, 'o', label=f'alpha={float(a):g}, gamma={float(g):g}: a={slope:.4g}, D={icpt:.2e}')\n\
             \x20   ax.plot(x, slope * x + icpt, '-')\n\
             ax.set_xlabel('1/N')\nax.set_ylabel('gap')\nax.legend()\n"
            .to_string(),
    };
    format!(
        "#!/usr/bin/env python3\n\
         # {title}\n\
         # data: xychain {command}\n\
         import csv\n\
         import matplotlib\n\
         matplotlib.use('Agg')\n\
         import matplotlib.pyplot as plt\n\
         import numpy as np\n\n\
         CSV = {csv:?}\n\
         OUT = {out:?}\n\n\n\
         def load():\n    with open(CSV, newline='') as f:\n        return list(csv.DictReader(f))\n\n\n\
         {body}\
         ax.set_title({title:?})\n\
         fig.savefig(OUT, dpi=150, bbox_inches='tight')\n",
        title = fig.title,
        command = fig.command,
        csv = csv_path,
        out = image_path,
    )
}
