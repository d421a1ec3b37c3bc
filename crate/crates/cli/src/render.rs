//! Table rendering. Every table is regenerated from computation, never from
//! the stored expectation fields, so corrupted registry data shows up as a
//! changed table. Output is deterministic: fixed ordering, no timestamps.

use crate::TableFormat;
use primesplit::curvedb::Registry;
use primesplit::engine::{run_registered_deduction, ResidueClassSet};
use primesplit::exact::ExactInt;
use primesplit::poly::discriminant;
use primesplit::report::CheckReport;
use primesplit::verify::{self, SampledPoint};
use serde_json::{json, Map, Value};

/// One recomputed splitting-table row: per-prime verdicts plus D facts.
struct SplitRow {
    level: u32,
    not_inert: Vec<u64>,
    unramified: Vec<u64>,
    splits: Vec<u64>,
    d_facts: Vec<String>,
}

fn recompute_table2(reg: &Registry) -> Vec<SplitRow> {
    let mut rows = vec![];
    for curve in reg.curves() {
        if curve.expectations.is_empty() {
            continue;
        }
        let mut row = SplitRow {
            level: curve.level,
            not_inert: vec![],
            unramified: vec![],
            splits: vec![],
            d_facts: vec![],
        };
        let mut primes: Vec<u64> = curve
            .enum_specs
            .iter()
            .filter(|s| s.constraint.is_none())
            .map(|s| s.prime)
            .collect();
        if let Some((_, q)) = verify::reciprocity::chain_data(curve.level) {
            primes.push(q);
        }
        primes.sort_unstable();
        primes.dedup();
        for p in primes {
            if verify::reciprocity::chain_data(curve.level).is_some_and(|(_, q)| q == p) {
                // radicand-criterion route
                let ok = verify::check_radicand_criterion(reg, curve.level)
                    .map(|rs| rs.iter().all(|r| r.is_pass()))
                    .unwrap_or(false);
                if ok {
                    row.not_inert.push(p);
                }
                continue;
            }
            if let Ok(d) = run_registered_deduction(reg, curve.level, p) {
                if d.summary.splits {
                    row.splits.push(p);
                }
                if d.summary.not_inert {
                    row.not_inert.push(p);
                }
                if d.summary.unramified {
                    row.unramified.push(p);
                }
            }
        }
        if curve.f.real_root_count() == 0 && curve.f.constant() > ExactInt::from(0) {
            row.d_facts.push(">0".into());
        }
        if let Ok(d) = run_registered_deduction(reg, curve.level, 2) {
            if !d.constraints.residues.is_empty()
                && d.constraints.residues.iter().all(|r| r % 2 == 1)
            {
                row.d_facts.push("odd".into());
            }
            if curve.d_mod8.is_some() {
                let rs: Vec<String> =
                    d.constraints.residues.iter().map(|r| r.to_string()).collect();
                row.d_facts.push(format!("= {} (mod 8)", rs.join(",")));
            }
        }
        if curve.d_mod5.is_some() {
            if let Ok(d) = run_registered_deduction(reg, curve.level, 5) {
                let identities_ok = verify::check_identities(reg)
                    .iter()
                    .filter(|r| r.id.contains(&format!(".{}.", curve.level)))
                    .all(|r| r.is_pass());
                if identities_ok {
                    let mut refined = d.constraints.residues.clone();
                    refined.remove(&4);
                    let rs: Vec<String> = refined.iter().map(|r| r.to_string()).collect();
                    row.d_facts.push(format!("= {} (mod 5)", rs.join(",")));
                }
            }
        }
        rows.push(row);
    }
    rows
}

fn list(ps: &[u64]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

pub fn table2(reg: &Registry, format: TableFormat) -> String {
    let rows = recompute_table2(reg);
    match format {
        TableFormat::Md => {
            let mut out = String::from("| N | not inert | unramified | splits | D |\n|---|---|---|---|---|\n");
            for r in &rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.level,
                    list(&r.not_inert),
                    list(&r.unramified),
                    list(&r.splits),
                    r.d_facts.join("; ")
                ));
            }
            out
        }
        TableFormat::Csv => {
            let mut out = String::from("N,p,verdict\n");
            for r in &rows {
                for &p in &r.not_inert {
                    out.push_str(&format!("{},{},not_inert\n", r.level, p));
                }
                for &p in &r.unramified {
                    out.push_str(&format!("{},{},unramified\n", r.level, p));
                }
                for &p in &r.splits {
                    out.push_str(&format!("{},{},splits\n", r.level, p));
                }
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "level": r.level.to_string(),
                        "not_inert": r.not_inert.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "unramified": r.unramified.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "splits": r.splits.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "d": r.d_facts,
                    })
                })
                .collect();
            wrap_table("2", Value::Array(rows))
        }
    }
}

pub fn table3(reg: &Registry, format: TableFormat) -> String {
    // levels and radicands for which the ramification-radicand criterion is
    // verified by the conjugate-factorization data
    let mut rows: Vec<(u32, Vec<String>)> = vec![];
    for level in verify::radicand_levels(reg) {
        let ok = verify::check_radicand_criterion(reg, level)
            .map(|rs| rs.iter().all(|r| r.is_pass()))
            .unwrap_or(false);
        if !ok {
            continue;
        }
        let curve = reg.get_curve(level).unwrap();
        let radicands = curve
            .quad_factorizations
            .iter()
            .map(|q| q.radicand.to_string())
            .collect();
        rows.push((level, radicands));
    }
    match format {
        TableFormat::Md => {
            let mut out = String::from("| N | a |\n|---|---|\n");
            for (level, rads) in &rows {
                out.push_str(&format!("| {} | {} |\n", level, rads.join(", ")));
            }
            out
        }
        TableFormat::Csv => {
            let mut out = String::from("N,a\n");
            for (level, rads) in &rows {
                for a in rads {
                    out.push_str(&format!("{level},{a}\n"));
                }
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(level, rads)| json!({"level": level.to_string(), "radicands": rads}))
                .collect();
            wrap_table("3", Value::Array(rows))
        }
    }
}

pub fn table4(reg: &Registry, format: TableFormat) -> String {
    let rows: Vec<(u32, Vec<u64>)> = reg
        .curves()
        .iter()
        .map(|c| (c.level, verify::table4_unramified(reg, c.level)))
        .collect();
    match format {
        TableFormat::Md => {
            let mut out = String::from("| N | unramified primes |\n|---|---|\n");
            for (level, ps) in &rows {
                out.push_str(&format!(
                    "| {} | {} |\n",
                    level,
                    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                ));
            }
            out
        }
        TableFormat::Csv => {
            let mut out = String::from("N,unramified_primes\n");
            for (level, ps) in &rows {
                out.push_str(&format!(
                    "{level},\"{}\"\n",
                    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                ));
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(level, ps)| {
                    json!({
                        "level": level.to_string(),
                        "primes": ps.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            wrap_table("4", Value::Array(rows))
        }
    }
}

pub fn table_disc(reg: &Registry, format: TableFormat) -> String {
    let mut rows: Vec<(u32, String, String)> = vec![];
    for c in reg.curves() {
        if c.published_discriminants.is_empty() {
            continue;
        }
        for f in &c.factors_z {
            let d = discriminant(f).expect("degree >= 1");
            rows.push((c.level, f.to_string(), d.to_string()));
        }
    }
    match format {
        TableFormat::Md => {
            let mut out = String::from("| N | factor | discriminant |\n|---|---|---|\n");
            for (level, f, d) in &rows {
                out.push_str(&format!("| {level} | {f} | {d} |\n"));
            }
            out
        }
        TableFormat::Csv => {
            let mut out = String::from("N,factor,discriminant\n");
            for (level, f, d) in &rows {
                out.push_str(&format!("{level},\"{f}\",{d}\n"));
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(level, f, d)| {
                    json!({"level": level.to_string(), "factor": f, "discriminant": d})
                })
                .collect();
            wrap_table("disc", Value::Array(rows))
        }
    }
}

fn wrap_table(name: &str, rows: Value) -> String {
    let mut tables = Map::new();
    tables.insert(name.to_string(), rows);
    let doc = json!({
        "paper_tables": Value::Object(tables),
        "checks": [],
        "meta": meta(),
    });
    format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
}

pub fn reports_json(reports: &[CheckReport]) -> String {
    let doc = json!({
        "paper_tables": {},
        "checks": reports,
        "meta": meta(),
    });
    serde_json::to_string_pretty(&doc).unwrap()
}

fn meta() -> Value {
    json!({
        "tool": "primesplit",
        "version": env!("CARGO_PKG_VERSION"),
        "deterministic": true,
    })
}

pub fn sample_line(p: &SampledPoint) -> String {
    use primesplit::verify::PointKind;
    match &p.kind {
        PointKind::Quadratic { d_free, scale } => format!(
            "x0 = {}/{}  d = {}  D = {}  s = {}",
            p.m, p.n, p.d, d_free, scale
        ),
        PointKind::Rational => format!("x0 = {}/{}  d = {}  rational point", p.m, p.n, p.d),
        PointKind::ModelRamification => {
            format!("x0 = {}/{}  d = 0  model ramification point", p.m, p.n)
        }
    }
}

pub fn class_set(set: &ResidueClassSet) -> String {
    let modulus = set.prime.pow(set.exponent);
    let mut out = String::new();
    if modulus <= 512 {
        let attained: Vec<String> = set.attained.iter().map(|r| r.to_string()).collect();
        out.push_str(&format!("attained mod {modulus}: {{{}}}\n", attained.join(", ")));
    }
    for t in set.attained_t_values() {
        let m = set.prime.pow(set.exponent - t);
        let units: Vec<String> = set.units_at(t, m).iter().map(|u| u.to_string()).collect();
        out.push_str(&format!(
            "t = {t}: unit {} {{{}}} (mod {m})\n",
            set.prime.pow(t),
            units.join(", ")
        ));
    }
    if set.saturated_zero {
        out.push_str("zero residue attained (conclusions need a larger modulus)\n");
    }
    out
}
