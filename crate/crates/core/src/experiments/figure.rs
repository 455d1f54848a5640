use std::fmt::Write as _;

use crate::error::Result;
use crate::sequences::{apply_switches, base_switch_sequence, dsequence, BitSequence, SwitchSpec};
use crate::transform::{dht, DhtKernel, RealSequence};

/// What to plot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FigureSource {
    DSequence { prime: u64 },
    Switch { length: usize, spec: SwitchSpec },
    Bits(BitSequence),
}

/// A bit sequence and its transform, ready for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeries {
    pub label: String,
    pub original: BitSequence,
    pub transformed: RealSequence,
}

pub fn figure_series(source: &FigureSource) -> Result<FigureSeries> {
    let (label, original) = match source {
        FigureSource::DSequence { prime } => (format!("1/{prime}"), dsequence(*prime, None)?),
        FigureSource::Switch { length, spec } => {
            let base = base_switch_sequence(*length)?;
            let label = match spec {
                SwitchSpec::Positions(p) => format!("length {length}, switched positions {p:?}"),
                SwitchSpec::Random { switches, seed } => {
                    format!("length {length}, {switches} switches, seed {seed}")
                }
            };
            (label, apply_switches(&base, spec)?)
        }
        FigureSource::Bits(bits) => (format!("input, length {}", bits.len()), bits.clone()),
    };
    let transformed = dht(&original.to_real()?, DhtKernel::auto_for(original.len()))?;
    Ok(FigureSeries {
        label,
        original,
        transformed,
    })
}

const WIDTH: f64 = 800.0;
const PANEL_HEIGHT: f64 = 240.0;
const MARGIN: f64 = 40.0;

impl FigureSeries {
    /// `index,original,dht` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,original,dht\n");
        for (i, (b, g)) in self
            .original
            .bits()
            .iter()
            .zip(self.transformed.iter())
            .enumerate()
        {
            let _ = writeln!(out, "{i},{b},{g:.6}");
        }
        out
    }

    /// Two stacked panels: the bits as a step trace, the transform as a line.
    pub fn to_svg(&self) -> String {
        let n = self.original.len();
        let plot_w = WIDTH - 2.0 * MARGIN;
        let plot_h = PANEL_HEIGHT - 2.0 * MARGIN;
        let x_at = |i: f64| MARGIN + plot_w * i / n.max(1) as f64;

        let top = MARGIN;
        let y_bit = |b: u8| top + plot_h * (1.0 - f64::from(b));
        let mut steps = Vec::with_capacity(2 * n);
        for (i, &b) in self.original.bits().iter().enumerate() {
            steps.push((x_at(i as f64), y_bit(b)));
            steps.push((x_at(i as f64 + 1.0), y_bit(b)));
        }

        let (lo, hi) = self
            .transformed
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let span = if hi > lo { hi - lo } else { 1.0 };
        let bottom = PANEL_HEIGHT + MARGIN;
        let y_dht = |v: f64| bottom + plot_h * (1.0 - (v - lo) / span);
        let line: Vec<(f64, f64)> = self
            .transformed
            .iter()
            .enumerate()
            .map(|(i, &v)| (x_at(i as f64 + 0.5), y_dht(v)))
            .collect();

        let points = |pts: &[(f64, f64)]| {
            pts.iter()
                .map(|(x, y)| format!("{x:.2},{y:.2}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let height = 2.0 * PANEL_HEIGHT;
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
        );
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{MARGIN}" y="{:.2}" font-size="14">(a) Original: {}</text>"#,
            MARGIN - 12.0,
            xml_escape(&self.label)
        );
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="black" stroke-width="1" points="{}"/>"#,
            points(&steps)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{MARGIN}" y="{:.2}" font-size="14">(b) DHT [{lo:.4}, {hi:.4}]</text>"#,
            bottom - 12.0
        );
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="1" points="{}"/>"#,
            points(&line)
        );
        svg.push_str("</svg>\n");
        svg
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dsequence_figure() {
        let fig = figure_series(&FigureSource::DSequence { prime: 101 }).unwrap();
        assert_eq!(fig.original.len(), 100);
        assert_eq!(fig.transformed.len(), fig.original.len());
        assert_eq!(fig.label, "1/101");
    }

    #[test]
    fn two_switch_figure() {
        let fig = figure_series(&FigureSource::Switch {
            length: 100,
            spec: SwitchSpec::Positions(vec![5, 36, 56, 70]),
        })
        .unwrap();
        let b = fig.original.bits();
        assert_eq!((b[4], b[35], b[55], b[69]), (1, 1, 0, 0));
        let expect = dht(&fig.original.to_real().unwrap(), DhtKernel::Matrix).unwrap();
        for (a, e) in fig.transformed.iter().zip(expect.iter()) {
            assert!((a - e).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_input_figure() {
        let bits = BitSequence::external(vec![0; 40]).unwrap();
        let fig = figure_series(&FigureSource::Bits(bits)).unwrap();
        assert!(fig.transformed.iter().all(|&v| v == 0.0));
        let csv = fig.to_csv();
        assert!(csv.starts_with("index,original,dht\n0,0,0.000000\n"));
        assert_eq!(csv.lines().count(), 41);
        let svg = fig.to_svg();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
