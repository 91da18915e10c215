#![allow(dead_code)]

use nevanlinna::{parse_expr, Config64, Expr64};

/// Test functions with a radius grid that keeps every circle clear of the divisor.
pub struct CorpusEntry {
    pub text: &'static str,
    pub radii: &'static [f64],
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry { text: "z^2 - 1", radii: &[0.5, 1.5, 3.0] },
    CorpusEntry { text: "z/(1 - z^2)", radii: &[0.4, 0.9, 1.5, 3.0] },
    CorpusEntry { text: "(z - 0.3)^3/(z + 0.2i)^2", radii: &[0.1, 0.25, 0.6, 2.0] },
    CorpusEntry { text: "(z-1)^2*(z+2)", radii: &[0.5, 1.5, 2.5] },
    CorpusEntry { text: "exp(z)", radii: &[0.5, 1.0, 2.0, 4.0] },
    CorpusEntry { text: "exp(z^2)*(z - 0.5)", radii: &[0.3, 1.0, 1.7] },
    CorpusEntry { text: "sin(z)", radii: &[1.0, 4.0, 5.0] },
    CorpusEntry { text: "tan(z)", radii: &[1.0, 2.0, 3.5] },
    CorpusEntry { text: "1/(z - 0.25)", radii: &[0.1, 1.0, 2.0] },
    CorpusEntry { text: "cos(2*z + 1) - 0.5", radii: &[0.2, 1.3, 2.6] },
    CorpusEntry { text: "(exp(z) - 2)/(z^2 + 4)", radii: &[0.5, 1.2, 2.5] },
];

pub fn expr(text: &str) -> Expr64 {
    parse_expr(text, false).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn cfg() -> Config64 {
    Config64::default()
}
