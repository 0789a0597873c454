//! Serialization helpers: 17-significant-digit CSV numbers, JSON layouts
//! for coefficient vectors, operator matrices, and seminorm forms, and the
//! CSV layout for sampled line functions.

use deepzero_core::bargmann::L2Function;
use deepzero_core::seminorm::{IndexSet, SeminormForm};
use deepzero_core::{C64, FockVector, OperatorMatrix};
use serde_json::{json, Value};

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fock_vector_to_json(v: &FockVector) -> Value {
    json!({
        "degree": v.degree(),
        "re": v.coeffs().iter().map(|c| c.re).collect::<Vec<_>>(),
        "im": v.coeffs().iter().map(|c| c.im).collect::<Vec<_>>(),
    })
}

pub fn fock_vector_from_json(value: &Value) -> Result<FockVector, String> {
    let degree = value["degree"].as_u64().ok_or("missing degree")? as usize;
    let re = value["re"].as_array().ok_or("missing re")?;
    let im = value["im"].as_array().ok_or("missing im")?;
    if re.len() != degree || im.len() != degree {
        return Err("re/im length disagrees with degree".into());
    }
    let coeffs = re
        .iter()
        .zip(im)
        .map(|(a, b)| {
            Ok(C64::new(
                a.as_f64().ok_or("non-numeric re entry")?,
                b.as_f64().ok_or("non-numeric im entry")?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(FockVector::new(coeffs))
}

/// Row-major re/im arrays plus the tail-leak diagnostic.
pub fn operator_matrix_to_json(op: &OperatorMatrix) -> Value {
    let m = op.matrix();
    json!({
        "rows": op.rows(),
        "cols": op.cols(),
        "re": m.data().iter().map(|c| c.re).collect::<Vec<_>>(),
        "im": m.data().iter().map(|c| c.im).collect::<Vec<_>>(),
        "tail_leak": op.tail_leak(),
    })
}

fn index_set_label(e: &IndexSet) -> String {
    match e {
        IndexSet::Even => "even".into(),
        IndexSet::Odd => "odd".into(),
        IndexSet::Explicit(members) => {
            let parts: Vec<String> = members.iter().map(|m| m.to_string()).collect();
            parts.join(",")
        }
    }
}

/// Gram-export layout: metadata plus the Hermitian matrix, row-major.
pub fn seminorm_form_to_json(form: &SeminormForm, config_echo: &str, lambda_min: f64) -> Value {
    json!({
        "config": config_echo,
        "index_set": index_set_label(&form.index_set),
        "beta": form.beta,
        "degree": form.degree,
        "pad": form.pad,
        "lambda_min": lambda_min,
        "hermitian_defect": form.matrix.hermitian_defect(),
        "matrix": {
            "rows": form.degree,
            "cols": form.degree,
            "re": form.matrix.data().iter().map(|c| c.re).collect::<Vec<_>>(),
            "im": form.matrix.data().iter().map(|c| c.im).collect::<Vec<_>>(),
        },
    })
}

/// CSV body for a sampled line function: `t,re,im,weight` per node.
pub fn l2_function_to_csv(f: &L2Function, config_echo: &str) -> String {
    let mut out = String::new();
    out.push_str("# ");
    out.push_str(config_echo);
    out.push('\n');
    out.push_str("t,re,im,weight\n");
    for ((&t, &w), v) in f
        .grid()
        .nodes()
        .iter()
        .zip(f.grid().weights())
        .zip(f.values())
    {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(t),
            fmt_f64(v.re),
            fmt_f64(v.im),
            fmt_f64(w)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use deepzero_core::bargmann::QuadratureGrid;
    use deepzero_core::operators::{displacement_padded, Pad};
    use deepzero_core::seminorm::seminorm_gram;

    #[test]
    fn seventeen_digit_round_trip() {
        for &x in &[0.1, -3.0e-15, 2.0 / 3.0, 1.4323323583816936] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn fock_vector_json_round_trip() {
        let v = FockVector::new(vec![C64::new(0.25, -1.5), C64::new(0.0, 3.0)]);
        let back = fock_vector_from_json(&fock_vector_to_json(&v)).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn operator_matrix_json_shape() {
        let d = displacement_padded(C64::new(1.0, 0.0), 4, Pad::Fixed(4));
        let j = operator_matrix_to_json(&d);
        assert_eq!(j["rows"], 8);
        assert_eq!(j["cols"], 4);
        assert_eq!(j["re"].as_array().unwrap().len(), 32);
        assert!(j["tail_leak"].as_f64().unwrap() >= 0.0);
    }

    #[test]
    fn seminorm_form_json_contains_matrix_and_metadata() {
        let form = seminorm_gram(&IndexSet::Even, 1.0, 4, Pad::Auto).unwrap();
        let j = seminorm_form_to_json(&form, "deepzero gram-export", 0.5);
        assert_eq!(j["degree"], 4);
        assert_eq!(j["index_set"], "even");
        assert_eq!(j["matrix"]["re"].as_array().unwrap().len(), 16);
        assert_eq!(j["config"], "deepzero gram-export");
    }

    #[test]
    fn l2_csv_layout() {
        let grid = QuadratureGrid::uniform_symmetric(0.5, 1);
        let f = L2Function::from_fn(&grid, |t| C64::new(t, -t));
        let csv = l2_function_to_csv(&f, "echo");
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# echo"));
        assert_eq!(lines.next(), Some("t,re,im,weight"));
        assert_eq!(csv.lines().count(), 5);
    }
}
