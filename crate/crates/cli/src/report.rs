//! Plain-text report laid out like a results table: one row of counts, one
//! row of fitted factors with residuals, then the recommended width.

use std::fmt::Write as _;

use homodim::dimension::{DecompositionEstimate, SingleTorusFit};

use crate::commands::CountsRecord;

fn cell(q: u64, residual: u64) -> String {
    if residual == 0 {
        q.to_string()
    } else {
        format!("{q} ±{residual}")
    }
}

pub fn render_report(
    counts: &CountsRecord,
    de: &DecompositionEstimate,
    single: &SingleTorusFit,
) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "landscape maxima (cap {}, resolution {}, sigma {}, min height {})",
        counts.cap, counts.resolution, counts.sigma, counts.min_height
    );
    let mut header = vec!["".to_string()];
    let mut row = vec!["count".to_string()];
    for (k, c) in counts.counts.iter().enumerate() {
        header.push(format!("H{k}"));
        row.push(c.to_string());
    }
    write_table(&mut s, &[header, row]);
    s.push('\n');

    let mut header = vec!["".to_string(), "p".to_string()];
    let mut row = vec!["T^q x R^p".to_string(), de.p.to_string()];
    for e in &de.q_estimates {
        header.push(format!("q|H{}", e.k));
        row.push(cell(e.q, e.residual));
    }
    header.push("dim U".to_string());
    row.push(cell(de.dim_u, de.uncertainty));
    write_table(&mut s, &[header, row]);
    s.push('\n');

    let _ = writeln!(s, "dim U = {} ±{}", de.dim_u, de.uncertainty);
    let _ = writeln!(
        s,
        "recommended width: [{}, {}]",
        de.width_interval[0], de.width_interval[1]
    );
    for e in &de.q_estimates {
        if counts.counts[e.k as usize] == 0 {
            let _ = writeln!(
                s,
                "note: no H{k} representatives, q_{k} = 0 and the factor is omitted",
                k = e.k
            );
        }
    }
    let _ = writeln!(
        s,
        "single torus reading: q = {}, total residual {}, dim U = {}",
        single.q, single.total_residual, single.dim_u
    );
    s
}

fn write_table(s: &mut String, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|x| x.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(x, &w)| format!("{x:<w$}"))
            .collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
}
