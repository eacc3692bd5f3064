//! Commands behind the `chamber-zeta` binary. Each command returns a
//! [`Report`]: the inputs, the computed results and a list of checks.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use chamber_zeta::algebra::{QPoly, Series, UPoly};
use chamber_zeta::complex::{enumerate_box, out_transitions, ChamberBox};
use chamber_zeta::determinant::{assemble_m, det_exact, det_of_i_minus_ut, direct_matrix};
use chamber_zeta::gallery::{classes_of_length, euler_product_of, primitive_classes_up_to, weighted_count_of};
use chamber_zeta::transfer::traces_stabilized;
use chamber_zeta::zeta::{closed_form, closed_form_count, closed_form_reciprocal, closed_form_series, exp_of_traces};
use chamber_zeta::QMode;

/// Longest gallery length `verify` enumerates for the Euler product.
pub const VERIFY_EULER_MAX: usize = 12;

/// Parses `sym` or an integer `q ≥ 2`.
pub fn parse_q(s: &str) -> Result<QMode, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("sym") {
        return Ok(QMode::Symbolic);
    }
    let v: BigInt = s.parse().map_err(|_| format!("`{s}` is neither `sym` nor an integer"))?;
    if v < BigInt::from(2) {
        return Err(format!("q must be at least 2, got {v}"));
    }
    Ok(QMode::Numeric(v))
}

/// Parses a comma-separated list of `q` values.
pub fn parse_q_list(s: &str) -> Result<Vec<QMode>, String> {
    let qs = s.split(',').filter(|p| !p.trim().is_empty()).map(parse_q).collect::<Result<Vec<_>, _>>()?;
    if qs.is_empty() {
        return Err("empty q list".into());
    }
    Ok(qs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn eq<T: PartialEq + ToString>(name: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Check { name: name.into(), pass: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    #[serde(skip)]
    text: Vec<String>,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Self {
        Report { command: command.into(), inputs, results: json!({}), checks: Vec::new(), text: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.inputs);
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{tag}] {}: {} | {}\n", c.name, c.lhs, c.rhs));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        out
    }

    /// Only `counts` has a tabular form.
    pub fn to_csv(&self) -> Result<String, String> {
        let rows: Vec<CountRow> = match self.results.get("rows") {
            Some(v) if self.command == "counts" => serde_json::from_value(v.clone()).map_err(|e| e.to_string())?,
            _ => return Err(format!("csv output is only available for counts, not {}", self.command)),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in rows {
            w.serialize(row).map_err(|e| e.to_string())?;
        }
        String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    #[serde(rename = "enum")]
    pub enumerated: String,
    pub trace: String,
    pub closed_form: String,
    pub agree: bool,
}

fn count_rows(q: &QMode, max_n: usize) -> Vec<CountRow> {
    let traces = traces_stabilized(max_n as u32, q);
    (1..=max_n)
        .map(|n| {
            let e = weighted_count_of(&classes_of_length(n), q);
            let c = closed_form_count(n as u32, q);
            let t = &traces[n - 1];
            CountRow {
                n,
                agree: e == *t && *t == c,
                enumerated: e.to_string(),
                trace: t.to_string(),
                closed_form: c.to_string(),
            }
        })
        .collect()
}

pub fn cmd_counts(q: &QMode, max_n: usize) -> Result<Report, String> {
    if max_n == 0 {
        return Err("max-n must be at least 1".into());
    }
    let mut r = Report::new("counts", json!({ "q": q.to_string(), "max_n": max_n }));
    let rows = count_rows(q, max_n);
    r.text.push(format!("{:>4}  {:>24}  {:>24}  {:>24}", "n", "enum", "trace", "closed form"));
    for row in &rows {
        r.text.push(format!("{:>4}  {:>24}  {:>24}  {:>24}", row.n, row.enumerated, row.trace, row.closed_form));
        r.checks.push(Check {
            name: format!("N_{} enumeration = trace = closed form", row.n),
            pass: row.agree,
            lhs: format!("{}, {}", row.enumerated, row.trace),
            rhs: row.closed_form.clone(),
        });
    }
    r.results = json!({ "rows": rows });
    Ok(r)
}

fn coefficient_strings(s: &Series) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

pub fn cmd_zeta(q: &QMode, order: usize) -> Result<Report, String> {
    let mut r = Report::new("zeta", json!({ "q": q.to_string(), "order": order }));
    let z = closed_form(q);
    let series = closed_form_series(q, order);
    let traces = traces_stabilized(order as u32, q);
    let from_traces = exp_of_traces(&traces, order).map_err(|e| e.to_string())?;
    r.text.push(format!("Z(u) = {z}"));
    r.text.push(format!("series: {series}"));
    r.checks.push(Check::eq("closed-form series = exp of traces", &series, &from_traces));
    r.checks.push(Check {
        name: "series coefficients integral".into(),
        pass: series.integral_coeffs().is_ok(),
        lhs: series.to_string(),
        rhs: "integral".into(),
    });
    r.results = json!({
        "closed_form": z,
        "closed_form_text": z.to_string(),
        "series": coefficient_strings(&series),
        "series_text": series.to_string(),
        "traces": traces.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(r)
}

/// `1 - q^a u^e`, the factors of the closed form.
fn known_factors(q: &QMode) -> Vec<UPoly> {
    [(2, 3), (3, 3), (3, 6), (4, 6)]
        .iter()
        .map(|&(a, e)| &UPoly::one() - &UPoly::monomial(q.q().pow(a), e))
        .collect()
}

/// `d` written as a product of closed-form factors and a cofactor, if any factor divides it.
fn factored(d: &UPoly, q: &QMode) -> Option<String> {
    let mut rest = d.clone();
    let mut parts = Vec::new();
    for f in known_factors(q) {
        while let Ok(quot) = rest.div_exact(&f) {
            if rest.is_zero() {
                break;
            }
            parts.push(format!("({f})"));
            rest = quot;
        }
    }
    if parts.is_empty() {
        return None;
    }
    if !rest.is_one() {
        parts.push(format!("({rest})"));
    }
    Some(parts.join(" * "))
}

pub fn cmd_det(q: &QMode, k: usize, width: usize, order: Option<usize>) -> Result<Report, String> {
    if k == 0 || width == 0 {
        return Err("k and width must be at least 1".into());
    }
    let mut r = Report::new("det", json!({ "q": q.to_string(), "k": k, "width": width, "order": order }));
    let m = assemble_m(k, width, q);
    let blocks = det_exact(&m.assembled).map_err(|e| e.to_string())?;
    let direct = det_exact(&direct_matrix(k, width, q)).map_err(|e| e.to_string())?;
    r.text.push(format!("det M_(k={k}, N={width}) = {blocks}"));
    let fact = factored(&blocks, q);
    if let Some(f) = &fact {
        r.text.push(format!("factored: {f}"));
    }
    r.checks.push(Check::eq("block matrices = weight table", &blocks, &direct));
    let mut results = json!({
        "matrix": m.dims_json(),
        "determinant": blocks,
        "determinant_text": blocks.to_string(),
        "factored": fact,
    });
    if let Some(order) = order {
        let got = Series::from_upoly(&blocks, order);
        let want = Series::from_ratfn(&closed_form_reciprocal(q), order).map_err(|e| e.to_string())?;
        r.text.push(format!("low order: {got}"));
        r.checks.push(Check::eq(format!("det agrees with 1/Z to u^{order}"), &got, &want));
        results["low_order"] = json!(coefficient_strings(&got));
    }
    r.results = results;
    Ok(r)
}

pub fn cmd_euler(q: &QMode, max_len: usize, order: Option<usize>) -> Result<Report, String> {
    let order = order.unwrap_or(max_len);
    if order > max_len {
        return Err(format!("order {order} exceeds the longest enumerated length {max_len}"));
    }
    let mut r = Report::new("euler", json!({ "q": q.to_string(), "max_len": max_len, "order": order }));
    let primitives = primitive_classes_up_to(max_len);
    let product = euler_product_of(&primitives, max_len, q, order).map_err(|e| e.to_string())?;
    let closed = closed_form_series(q, order);
    let per_length: Vec<usize> =
        (1..=max_len).map(|n| primitives.iter().filter(|c| c.length == n).count()).collect();
    r.text.push(format!("primitive classes by length: {per_length:?}"));
    r.text.push(format!("product: {product}"));
    r.checks.push(Check::eq("Euler product = closed-form series", &product, &closed));
    r.results = json!({
        "primitive_classes": per_length,
        "product": coefficient_strings(&product),
        "product_text": product.to_string(),
    });
    Ok(r)
}

pub fn cmd_galleries(q: &QMode, length: usize, list: bool) -> Result<Report, String> {
    if length == 0 {
        return Err("length must be at least 1".into());
    }
    let mut r = Report::new("galleries", json!({ "q": q.to_string(), "length": length, "list": list }));
    let classes = classes_of_length(length);
    let weighted = weighted_count_of(&classes, q);
    let primitive = classes.iter().filter(|c| c.is_primitive()).count();
    let trace = traces_stabilized(length as u32, q).pop().expect("length ≥ 1");
    r.text.push(format!("{} classes, {primitive} primitive, N_{length} = {weighted}", classes.len()));
    let lines: Vec<String> = if list { classes.iter().map(|c| c.list_line(q)).collect() } else { Vec::new() };
    r.text.extend(lines.iter().cloned());
    r.checks.push(Check::eq("weighted count = trace", &weighted, &trace));
    r.checks.push(Check::eq("weighted count = closed form", &weighted, &closed_form_count(length as u32, q)));
    r.results = json!({
        "classes": classes.len(),
        "primitive": primitive,
        "weighted_count": weighted.to_string(),
        "list": if list { json!(lines) } else { Value::Null },
    });
    Ok(r)
}

/// Counts, zeta series, Euler product, determinants and limits for every `q`.
pub fn cmd_verify(qs: &[QMode], order: usize) -> Result<Report, String> {
    let names: Vec<String> = qs.iter().map(ToString::to_string).collect();
    let mut r = Report::new("verify", json!({ "q": names, "order": order }));
    let classes: Vec<_> = (1..=order).map(classes_of_length).collect();
    let euler_len = order.min(VERIFY_EULER_MAX);
    let primitives: Vec<_> =
        classes.iter().take(euler_len).flatten().filter(|c| c.is_primitive()).cloned().collect();
    for q in qs {
        let traces = traces_stabilized(order as u32, q);
        for n in 1..=order {
            let e = weighted_count_of(&classes[n - 1], q);
            let c = closed_form_count(n as u32, q);
            r.checks.push(Check::eq(format!("q={q} N_{n} enumeration = closed form"), &e, &c));
            r.checks.push(Check::eq(format!("q={q} N_{n} trace = closed form"), &traces[n - 1], &c));
        }

        let series = closed_form_series(q, order);
        let from_traces = exp_of_traces(&traces, order).map_err(|e| e.to_string())?;
        r.checks.push(Check::eq(format!("q={q} zeta series = exp of traces to u^{order}"), &series, &from_traces));

        let product = euler_product_of(&primitives, euler_len, q, euler_len).map_err(|e| e.to_string())?;
        let closed = closed_form_series(q, euler_len);
        r.checks.push(Check::eq(format!("q={q} Euler product to u^{euler_len}"), &product, &closed));

        for k in 1..=3 {
            for n in 1..=3 {
                let a = det_exact(&assemble_m(k, n, q).assembled).map_err(|e| e.to_string())?;
                let b = det_exact(&direct_matrix(k, n, q)).map_err(|e| e.to_string())?;
                r.checks.push(Check::eq(format!("q={q} det M_({k},{n}) block = direct"), &a, &b));
            }
        }

        let det_order = order.min(9);
        let d = det_exact(&assemble_m(4, 5, q).assembled).map_err(|e| e.to_string())?;
        let want = Series::from_ratfn(&closed_form_reciprocal(q), det_order).map_err(|e| e.to_string())?;
        r.checks.push(Check::eq(
            format!("q={q} det M_(4,5) = 1/Z to u^{det_order}"),
            &Series::from_upoly(&d, det_order),
            &want,
        ));

        let limit = det_of_i_minus_ut(q);
        r.checks.push(Check {
            name: format!("q={q} double Schur limit = 1/Z"),
            pass: limit.is_ok(),
            lhs: limit.map_or_else(|e| e.to_string(), |f| f.to_string()),
            rhs: closed_form_reciprocal(q).to_string(),
        });
    }

    let chambers = enumerate_box(ChamberBox::new(8, 8));
    let bad: Vec<String> = chambers
        .iter()
        .filter(|&&c| out_transitions(c).into_iter().fold(QPoly::zero(), |acc, (_, w)| &acc + &w) != QPoly::q())
        .map(ToString::to_string)
        .collect();
    r.checks.push(Check {
        name: "out-weight q on Box(8,8)".into(),
        pass: bad.is_empty(),
        lhs: format!("{} chambers, {} off", chambers.len(), bad.len()),
        rhs: "0 off".into(),
    });

    let passed = r.checks.iter().filter(|c| c.pass).count();
    r.results = json!({ "checks_passed": passed, "checks_total": r.checks.len() });
    Ok(r)
}
