use serde_json::{json, Value};

use super::{CGTable, CoupledState};
use crate::exactnum::RadicalSum;

fn coefficient_text(magnitude: &RadicalSum) -> String {
    if *magnitude == RadicalSum::one() {
        String::new()
    } else if magnitude.len() > 1 {
        format!("({magnitude})")
    } else {
        magnitude.to_string()
    }
}

/// `|L,M> = c1|m1,m2> + c2|m1,m2> ...`, terms in descending `m₁`, unit
/// coefficients elided.
pub fn render_state(state: &CoupledState) -> String {
    let mut line = format!("|{},{}> =", state.total, state.projection);
    for (i, (&(m1, m2), amplitude)) in state.terms_descending().enumerate() {
        let negative = amplitude.signum() < 0;
        let magnitude = if negative { -amplitude } else { amplitude.clone() };
        let sign = match (i, negative) {
            (0, false) => " ",
            (0, true) => " -",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        line.push_str(&format!("{sign}{}|{m1},{m2}>", coefficient_text(&magnitude)));
    }
    line
}

/// One line per state, descending `L` then descending `M`.
pub fn render_table_text(table: &CGTable) -> String {
    table.states.iter().map(|s| render_state(s) + "\n").collect()
}

pub fn render_table_json(table: &CGTable) -> Value {
    let states: Vec<Value> = table
        .states
        .iter()
        .map(|s| {
            let amplitudes: Vec<Value> = s
                .terms_descending()
                .map(|(&(m1, m2), a)| {
                    json!({
                        "m1": m1,
                        "m2": m2,
                        "amplitude": a,
                        "value": a.to_f64(),
                    })
                })
                .collect();
            json!({ "L": s.total, "M": s.projection, "amplitudes": amplitudes })
        })
        .collect();
    json!({
        "l1": table.l1,
        "l2": table.l2,
        "n": table.n,
        "states": states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cg::{cg_table, photon_table};
    use crate::half::Half;

    #[test]
    fn spin_half_lines() {
        let text = render_table_text(&cg_table(Half::from_doubled(1)).unwrap());
        assert_eq!(
            text,
            "|1,1> = |1/2,1/2>\n\
             |1,0> = 1/2√2|1/2,-1/2> + 1/2√2|-1/2,1/2>\n\
             |1,-1> = |-1/2,-1/2>\n\
             |0,0> = 1/2√2|1/2,-1/2> - 1/2√2|-1/2,1/2>\n"
        );
    }

    #[test]
    fn json_matches_text_order() {
        let table = photon_table();
        let v = render_table_json(&table);
        let states = v["states"].as_array().unwrap();
        assert_eq!(states.len(), 4);
        assert_eq!(states[1]["L"], "2");
        assert_eq!(states[1]["M"], "0");
        assert_eq!(states[3]["amplitudes"][1]["amplitude"], "-1/2√2");
        assert_eq!(states[3]["amplitudes"][1]["m1"], "-1");
    }
}
