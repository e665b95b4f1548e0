use std::fmt;

/// A commuting quantization parameter.
///
/// Variants are declared in name order (`lambda` < `p..` < `q`) so the derived
/// ordering matches the lexicographic ordering of the printed names for n ≤ 9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// The auxiliary variable of the two-variable Pascal-type identity.
    Lambda,
    /// `p_ij = χ^i(g_j)`, stored 1-based.
    P(u8, u8),
    /// The distinguished parameter `q`.
    Q,
}

impl Var {
    pub fn p(i: usize, j: usize) -> Var {
        Var::P(i as u8, j as u8)
    }

    /// Parses a plain variable name such as `q`, `lambda`, `p12` or `p10_3`.
    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "q" => Some(Var::Q),
            "lambda" => Some(Var::Lambda),
            _ => {
                let rest = name.strip_prefix('p')?;
                if let Some((a, b)) = rest.split_once('_') {
                    let i = a.parse::<u8>().ok()?;
                    let j = b.parse::<u8>().ok()?;
                    return (i > 0 && j > 0).then_some(Var::P(i, j));
                }
                let bytes = rest.as_bytes();
                if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_digit) {
                    return None;
                }
                let (i, j) = (bytes[0] - b'0', bytes[1] - b'0');
                (i > 0 && j > 0).then_some(Var::P(i, j))
            }
        }
    }

    pub fn latex(&self) -> String {
        match self {
            Var::Lambda => "\\lambda".to_string(),
            Var::Q => "q".to_string(),
            Var::P(i, j) if *i < 10 && *j < 10 => format!("p_{{{i}{j}}}"),
            Var::P(i, j) => format!("p_{{{i},{j}}}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Lambda => write!(f, "lambda"),
            Var::Q => write!(f, "q"),
            Var::P(i, j) if *i < 10 && *j < 10 => write!(f, "p{i}{j}"),
            Var::P(i, j) => write!(f, "p{i}_{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [Var::Q, Var::Lambda, Var::p(1, 2), Var::p(2, 2), Var::p(10, 3)] {
            assert_eq!(Var::from_name(&v.to_string()), Some(v));
        }
        assert_eq!(Var::from_name("p0"), None);
        assert_eq!(Var::from_name("p123"), None);
        assert_eq!(Var::from_name("x1"), None);
    }

    #[test]
    fn order_follows_names() {
        assert!(Var::Lambda < Var::p(1, 1));
        assert!(Var::p(1, 2) < Var::p(2, 1));
        assert!(Var::p(2, 2) < Var::Q);
    }
}
