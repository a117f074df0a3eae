//! Building states from JSON specs and checking validation errors.

use multiconc::states::{make_state, StateSpec};

fn main() {
    let specs = [
        r#"{"kind":"ghz","n_parties":4}"#,
        r#"{"kind":"w","n_parties":3,"local_dim":3}"#,
        r#"{"kind":"bell","n_parties":2}"#,
        r#"{"kind":"random_mixed","params":{"rank":2},"seed":9}"#,
        r#"{"kind":"product","params":{"locals":[[[1,0],[1,0]]]}}"#,
        r#"{"kind":"ghz_noise","params":{"x":1.2}}"#,
        r#"{"kind":"dense","n_parties":1,"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#,
    ];
    for text in specs {
        let spec: StateSpec = serde_json::from_str(text).expect("well-formed spec");
        match make_state(&spec) {
            Ok(rho) => println!("{text}\n  -> dim {} purity {:.6}", rho.ctx().dim(), rho.purity()),
            Err(e) => println!("{text}\n  -> rejected ({}): {e}", e.kind()),
        }
    }
}
