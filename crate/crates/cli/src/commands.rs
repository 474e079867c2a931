use std::fs::File;

use mapcone::binary_forms::{act, disc, BinaryForm, UnimodularMatrix};
use mapcone::cone_engine::{dual_contained_in_orthant, ConeH, KodairaEnergy};
use mapcone::fiber_picard::{basis_identities, kodaira_fiber};
use mapcone::invariant_picard::{derive_relation1, pairing_matrix, relation1_trace};
use mapcone::point_counter::{count_series, fit_exponent, CountPolicy, CountSeries, FitResult};
use mapcone::rational::{parse_rational, ratio};
use mapcone::{kodaira_full, Error};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::output::Envelope;
use crate::Space;

fn check_n(n: usize) -> Result<(), Error> {
    if n < 3 {
        Err(Error::InvalidPointCount(n))
    } else {
        Ok(())
    }
}

fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn pairings(n: usize) -> Result<Envelope, Error> {
    check_n(n)?;
    let table = pairing_matrix(n)?;
    let labels = table.column_labels();
    let mut env = Envelope::new("pairings");
    let rows: Vec<Value> = table
        .curves
        .iter()
        .zip(&table.entries)
        .map(|(c, r)| json!({ "curve": c.to_string(), "entries": r }))
        .collect();
    env.field("n", json!(n)).field("columns", json!(labels)).field("rows", json!(rows));

    let mut header = vec!["curve".to_string()];
    header.extend(labels.iter().cloned());
    env.table.push(header.clone());
    let mut human = vec![header.join("\t")];
    for (c, r) in table.curves.iter().zip(&table.entries) {
        let mut row = vec![c.to_string()];
        row.extend(strs(r));
        human.push(row.join("\t"));
        env.table.push(row);
    }
    env.human = human.join("\n");
    Ok(env)
}

pub fn cone_cert(n: usize) -> Result<Envelope, Error> {
    check_n(n)?;
    let cone = ConeH::from_pairing(&pairing_matrix(n)?);
    let cert = dual_contained_in_orthant(&cone)?;
    let mut env = Envelope::new("cone-cert");
    env.verdict = Some(cert.passed);
    env.field("n", json!(n)).field("certificate", cert.to_json());
    env.table.push(strs(&["coordinate", "minimum", "verified"]));
    let mut human = vec![format!(
        "dual of the {} curve rows on sum(d) = 1, per-coordinate minima:",
        cone.constraints().rows()
    )];
    for c in &cert.coordinates {
        let min = c.minimum().map_or("-inf".to_string(), ToString::to_string);
        human.push(format!("  {:<6} min {:<8} dual certificate {}", c.label, min, if c.verified { "ok" } else { "FAILED" }));
        env.table.push(vec![c.label.clone(), min, c.verified.to_string()]);
    }
    env.human = human.join("\n");
    Ok(env)
}

pub fn kodaira(n: usize, space: Space) -> Result<Envelope, Error> {
    check_n(n)?;
    let value = match space {
        Space::Full => kodaira_full(n)?,
        Space::Fiber => KodairaEnergy::Value(kodaira_fiber(n)?),
    };
    let expected = ratio(2, n as i64);
    let mut env = Envelope::new("kodaira");
    env.verdict = Some(value == KodairaEnergy::Value(expected.clone()));
    let space_name = match space {
        Space::Full => "full",
        Space::Fiber => "fiber",
    };
    env.field("n", json!(n))
        .field("space", json!(space_name))
        .field("value", json!(value.to_string()))
        .field("expected", json!(expected.to_string()));
    env.table.push(strs(&["n", "space", "value", "expected"]));
    env.table
        .push(vec![n.to_string(), space_name.into(), value.to_string(), expected.to_string()]);
    env.human = value.to_string();
    Ok(env)
}

pub fn relation(n: usize) -> Result<Envelope, Error> {
    check_n(n)?;
    let trace = relation1_trace(n)?;
    let class = derive_relation1(n)?;
    let ok = trace.pairs_per_point == (n - 1) as u128
        && trace.rows.iter().all(|r| r.coefficient == (r.s * (r.s - 1) / 2) as u128);
    let mut env = Envelope::new("relation");
    env.verdict = Some(ok);
    let rows: Vec<Value> = trace
        .rows
        .iter()
        .map(|r| {
            json!({
                "s": r.s,
                "incidences": r.incidences.to_string(),
                "subsets": r.subsets.to_string(),
                "coefficient": r.coefficient.to_string(),
            })
        })
        .collect();
    env.field("n", json!(n))
        .field("pairs", json!(trace.pairs.to_string()))
        .field("l_coefficient", json!(trace.pairs_per_point.to_string()))
        .field("rows", json!(rows))
        .field("relation", json!(class.to_string()));
    env.table.push(strs(&["s", "incidences", "subsets", "coefficient"]));
    let mut human = vec![format!(
        "summing over {} pairs {{a,a'}}: each L_a occurs {} times",
        trace.pairs, trace.pairs_per_point
    )];
    for r in &trace.rows {
        human.push(format!(
            "  B[{}]: {} incidences / {} subsets = {}",
            r.s, r.incidences, r.subsets, r.coefficient
        ));
        env.table.push(vec![
            r.s.to_string(),
            r.incidences.to_string(),
            r.subsets.to_string(),
            r.coefficient.to_string(),
        ]);
    }
    human.push(format!("zero class: {class}"));
    env.human = human.join("\n");
    Ok(env)
}

pub fn fiber_check(n: usize) -> Result<Envelope, Error> {
    check_n(n)?;
    let checks = basis_identities(n)?;
    let a = kodaira_fiber(n)?;
    let kodaira_ok = a == ratio(2, n as i64);
    let mut env = Envelope::new("fiber-check");
    env.verdict = Some(checks.iter().all(|c| c.holds()) && kodaira_ok);
    let items: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "identity": c.name, "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string(), "holds": c.holds() }))
        .collect();
    env.field("n", json!(n))
        .field("identities", json!(items))
        .field("kodaira_fiber", json!(a.to_string()));
    env.table.push(strs(&["identity", "holds"]));
    let mut human = Vec::new();
    for c in &checks {
        human.push(format!("[{}] {}", if c.holds() { "ok" } else { "FAIL" }, c.name));
        human.push(format!("      {}", c.lhs));
        env.table.push(vec![format!("\"{}\"", c.name), c.holds().to_string()]);
    }
    human.push(format!("[{}] a(L, D) = {a}", if kodaira_ok { "ok" } else { "FAIL" }));
    env.table.push(vec!["a(L D) = 2/n".into(), kodaira_ok.to_string()]);
    env.human = human.join("\n");
    Ok(env)
}

pub fn discriminant(coeffs: &str) -> Result<Envelope, Error> {
    let f = BinaryForm::parse(coeffs)?;
    let d = disc(&f)?;
    let mut env = Envelope::new("disc");
    env.field("coeffs", json!(strs(f.coeffs())))
        .field("degree", json!(f.degree()))
        .field("disc", json!(d.to_string()));
    env.table.push(strs(&["disc"]));
    env.table.push(vec![d.to_string()]);
    env.human = d.to_string();
    Ok(env)
}

pub fn act_on(coeffs: &str, matrix: &str) -> Result<Envelope, Error> {
    let f = BinaryForm::parse(coeffs)?;
    let entries = BinaryForm::parse(matrix)?.into_coeffs();
    let [a, b, c, d]: [BigInt; 4] = entries
        .try_into()
        .map_err(|_| Error::Parse("matrix needs exactly four entries a,b,c,d".into()))?;
    let m = UnimodularMatrix::new(a, b, c, d)?;
    let g = act(&f, &m);
    let mut env = Envelope::new("act");
    env.field("coeffs", json!(strs(f.coeffs())))
        .field("matrix", json!(m.to_string()))
        .field("result", json!(strs(g.coeffs())));
    env.table.push((0..=g.degree()).map(|i| format!("x{i}")).collect());
    env.table.push(strs(g.coeffs()));
    env.human = g.to_string();
    Ok(env)
}

fn fit_json(fit: &FitResult) -> Value {
    json!({
        "slope": fit.slope,
        "intercept": fit.intercept,
        "constant": fit.constant,
        "residual_norm": fit.residual_norm,
        "points": fit.points,
    })
}

fn series_table(env: &mut Envelope, series: &CountSeries) {
    env.table.push(strs(&["B", "N"]));
    for (b, n) in series.entries() {
        env.table.push(vec![b.to_string(), n.to_string()]);
    }
}

pub struct CountArgs<'a> {
    pub coeffs: &'a str,
    pub bmax: u64,
    pub grid: usize,
    pub t0: u64,
    pub growth: &'a str,
    pub stab: u32,
}

pub fn count(args: CountArgs<'_>) -> Result<Envelope, Error> {
    let f = BinaryForm::parse(args.coeffs)?;
    if args.grid == 0 || args.grid > 63 || (args.bmax >> (args.grid - 1)) == 0 {
        return Err(Error::InvalidSeries(format!(
            "grid of {} halvings does not fit under bmax = {}",
            args.grid, args.bmax
        )));
    }
    let grid: Vec<u64> = (0..args.grid).rev().map(|k| args.bmax >> k).collect();
    let policy = CountPolicy {
        t0: args.t0,
        growth: parse_rational(args.growth)?,
        stabilization_rounds: args.stab,
    };
    let series = count_series(&f, &grid, &policy)?;
    let mut env = Envelope::new("count");
    let points: Vec<Value> = series.entries().iter().map(|(b, n)| json!({ "B": b, "N": n })).collect();
    env.field("coeffs", json!(strs(f.coeffs())))
        .field("target_exponent", json!(ratio(2, f.degree() as i64).to_string()))
        .field("series", json!(points));
    let mut human = vec!["B\tN".to_string()];
    human.extend(series.entries().iter().map(|(b, n)| format!("{b}\t{n}")));
    if let Ok(fit) = fit_exponent(&series) {
        human.push(format!(
            "fitted exponent {:.4} (target 2/{} = {:.4}), c = {:.4}",
            fit.slope,
            f.degree(),
            2.0 / f.degree() as f64,
            fit.constant
        ));
        env.field("fit", fit_json(&fit));
    }
    series_table(&mut env, &series);
    env.human = human.join("\n");
    Ok(env)
}

pub fn fit(path: &str) -> Result<Envelope, Error> {
    let file = File::open(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let series = CountSeries::read_csv(file)?;
    let fit = fit_exponent(&series)?;
    let mut env = Envelope::new("fit");
    env.field("input", json!(path)).field("fit", fit_json(&fit));
    env.table.push(strs(&["slope", "intercept", "constant", "residual_norm", "points"]));
    env.table.push(vec![
        fit.slope.to_string(),
        fit.intercept.to_string(),
        fit.constant.to_string(),
        fit.residual_norm.to_string(),
        fit.points.to_string(),
    ]);
    env.human = format!(
        "slope {:.6}\nintercept {:.6}\nconstant {:.6}\nresidual {:.6}\npoints {}",
        fit.slope, fit.intercept, fit.constant, fit.residual_norm, fit.points
    );
    Ok(env)
}
