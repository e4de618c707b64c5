//! One function per subcommand; each returns the text and JSON renderings
//! of the same values.

use machin_core::alpha::{binary_recip_pi_from_parity, AlphaSeq};
use machin_core::beta::beta_two_step;
use machin_core::engine::{self, EngineConfig, IterationRow};
use machin_core::formula::{self, residual_log2, MachinFormula};
use machin_core::numeric::{digit_count, PrecisionContext};
use machin_core::radical::{alpha_via_radicals, required_bits};
use machin_core::Result;
use serde_json::{json, Value};

pub struct Report {
    pub text: String,
    pub json: Value,
}

/// Right-aligned columns separated by ` | `.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join(" | ")
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    for r in rows {
        out.push('\n');
        out.push_str(&line(r.clone()));
    }
    out
}

fn row_json(r: &IterationRow) -> Value {
    json!({ "n": r.n, "k": r.k, "digits": r.digits })
}

pub fn run(iterations: u64, config: EngineConfig) -> Result<Report> {
    let (rows, _) = engine::run_engine_with(config, iterations)?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.k.to_string(), r.digits.to_string()])
        .collect();
    Ok(Report {
        text: table(&["Iteration", "k", "Digits of pi"], &cells),
        json: json!({ "rows": rows.iter().map(row_json).collect::<Vec<_>>() }),
    })
}

pub fn digits(count: usize) -> Result<Report> {
    let (pi, rows) = engine::pi_digits(count)?;
    Ok(Report {
        text: pi.clone(),
        json: json!({
            "count": count,
            "pi": pi,
            "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
        }),
    })
}

pub fn alpha(max_k: u64, oracle: bool, bits: Option<u32>) -> Result<Report> {
    let values: Vec<(u64, String)> = if oracle {
        (2..=max_k)
            .map(|k| {
                let need = (required_bits(k) as u32).max(bits.unwrap_or(0));
                alpha_via_radicals(k, &PrecisionContext::new(need)?).map(|a| (k, a.to_string()))
            })
            .collect::<Result<_>>()?
    } else {
        let seq = engine::reference_alphas(max_k as usize)?;
        (2..=max_k)
            .map(|k| (k, seq.get(k as usize).unwrap().to_string()))
            .collect()
    };
    let cells: Vec<Vec<String>> = values.iter().map(|(k, a)| vec![k.to_string(), a.clone()]).collect();
    Ok(Report {
        text: table(&["k", "alpha_k"], &cells),
        json: json!({
            "source": if oracle { "radicals" } else { "bits" },
            "rows": values.iter().map(|(k, a)| json!({ "k": k, "alpha": a })).collect::<Vec<_>>(),
        }),
    })
}

pub fn beta(k: u64) -> Result<Report> {
    let alphas = engine::reference_alphas(k as usize)?;
    let alpha = alphas.get(k as usize).unwrap().clone();
    let b = beta_two_step(k, &alpha)?;
    let (n, d) = (b.numer(), b.denom());
    let text = format!(
        "k = {k}\nalpha_k = {alpha}\nbeta_k numerator ({} digits):\n{n}\nbeta_k denominator ({} digits):\n{d}",
        digit_count(n),
        digit_count(d),
    );
    Ok(Report {
        text,
        json: json!({
            "k": k,
            "alpha": alpha.to_string(),
            "numerator": n.to_string(),
            "denominator": d.to_string(),
            "numerator_digits": digit_count(n),
            "denominator_digits": digit_count(d),
        }),
    })
}

fn formula_report(f: &MachinFormula, ctx: &PrecisionContext) -> Result<(String, Value)> {
    let residual = residual_log2(&formula::verify_formula(f, ctx)?);
    let mut text = f.render();
    for (i, t) in f.terms.iter().enumerate() {
        let (n, d) = t.argument();
        let (nd, dd) = t.digit_counts();
        text.push_str(&format!(
            "\nterm {}: coeff {}, arctan({n}/{d}) [{nd}/{dd} digits]",
            i + 1,
            t.coeff
        ));
    }
    text.push_str(&match residual {
        Some(e) => format!("\nresidual < 2^{}", e + 1),
        None => "\nresidual = 0".to_string(),
    });
    let terms: Vec<Value> = f
        .terms
        .iter()
        .map(|t| {
            let (n, d) = t.argument();
            json!({ "coeff": t.coeff.to_string(), "num": n.to_string(), "den": d.to_string() })
        })
        .collect();
    Ok((text, json!({ "terms": terms, "residual_log2": residual })))
}

pub fn formula(k: u64, terms: Option<usize>, terminal: Option<usize>, ctx: &PrecisionContext) -> Result<Report> {
    let mut f = match terms {
        None => formula::two_term(k)?,
        Some(m) => formula::expand_multi_term(k, m)?,
    };
    if let Some(n) = terminal {
        f = f.with_terminal_split(n)?;
    }
    let (mut text, mut json) = formula_report(&f, ctx)?;
    if f.terminated_early {
        text.push_str("\nclosing reciprocal became an integer; expansion is complete");
    }
    json["k"] = json!(k);
    json["terminated_early"] = json!(f.terminated_early);
    Ok(Report { text, json })
}

pub fn binary_recip(ks: &[usize]) -> Result<Report> {
    let max = ks.iter().copied().max().unwrap_or(0);
    let seq: AlphaSeq = engine::reference_alphas(max.max(1))?;
    let rows: Vec<(usize, String)> = ks
        .iter()
        .map(|&k| binary_recip_pi_from_parity(&seq, k).map(|s| (k, s)))
        .collect::<Result<_>>()?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(k, s)| vec![k.to_string(), format!("{s}_2")])
        .collect();
    Ok(Report {
        text: table(&["K", "1/pi"], &cells),
        json: json!({ "rows": rows.iter().map(|(k, s)| json!({ "k": k, "binary": s })).collect::<Vec<_>>() }),
    })
}

pub fn tan_bench(k: u64, sigma: u64, n_max: usize, ctx: &PrecisionContext) -> Result<Report> {
    let rows = engine::tan_bench(k, sigma, n_max, ctx)?;
    let text = rows
        .iter()
        .map(|(n, d)| format!("n = {n}: {d} digits of pi"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report {
        text,
        json: json!({
            "k": k,
            "sigma": sigma,
            "rows": rows.iter().map(|(n, d)| json!({ "n": n, "digits": d })).collect::<Vec<_>>(),
        }),
    })
}

/// Named formulas and the residual each must beat: `2^(8 - bits)`.
pub fn verify(ctx: &PrecisionContext) -> Result<(Report, bool)> {
    let named: Vec<(&str, MachinFormula)> = vec![
        ("machin", formula::machin()),
        ("hermann", formula::hermann()),
        ("k7", formula::k7()),
        ("seven-term", formula::seven_term()?),
    ];
    let limit = 8 - ctx.bits() as i64;
    let mut cells = Vec::new();
    let mut out = Vec::new();
    let mut all_ok = true;
    for (name, f) in &named {
        let r = residual_log2(&formula::verify_formula(f, ctx)?);
        let ok = r.is_none_or(|e| e < limit);
        all_ok &= ok;
        let shown = r.map_or("-inf".to_string(), |e| e.to_string());
        cells.push(vec![
            name.to_string(),
            f.len().to_string(),
            shown,
            if ok { "ok" } else { "FAIL" }.to_string(),
        ]);
        out.push(json!({ "name": name, "terms": f.len(), "residual_log2": r, "ok": ok }));
    }
    Ok((
        Report {
            text: table(&["formula", "terms", "log2 residual", "status"], &cells),
            json: json!({ "bits": ctx.bits(), "formulas": out }),
        },
        all_ok,
    ))
}
