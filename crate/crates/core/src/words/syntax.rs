//! Text form of word specs.
//!
//! ```text
//! alpha := INT "/" INT | "(" INT ("+"|"-") INT "*sqrt(" INT "))/" INT
//! spec  := "periodic:" BITSTRING | "mech:" alpha ["," "rho=" INT "/" INT]
//! ```

use num_rational::Ratio;
use num_traits::Zero;

use super::{Alpha, FiniteWord, WordSpec};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected {token:?}")))
        }
    }

    fn digits(&mut self) -> &'a str {
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        let s = &self.rest()[..len];
        self.pos += len;
        s
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        let negative = self.eat("-");
        let digits = self.digits();
        if digits.is_empty() {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let magnitude: i64 = digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn ratio(&mut self) -> Result<(i64, i64)> {
        let num = self.int()?;
        self.expect("/")?;
        let den_pos = self.pos;
        let den = self.int()?;
        if den == 0 {
            return Err(Error::Parse {
                pos: den_pos,
                msg: "zero denominator".into(),
            });
        }
        Ok((num, den))
    }

    fn alpha(&mut self) -> Result<Alpha> {
        let start = self.pos;
        let at_start = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                pos: start,
                msg: other.to_string(),
            },
        };
        if self.eat("(") {
            let p = self.int()?;
            let sign = if self.eat("+") {
                1
            } else if self.eat("-") {
                -1
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            let q = self.int()?;
            self.expect("*sqrt(")?;
            let d_pos = self.pos;
            let d = self.int()?;
            self.expect("))/")?;
            let r = self.int()?;
            Alpha::surd(p, sign * q, d, r).map_err(|e| match e {
                Error::PerfectSquare(_) => Error::Parse {
                    pos: d_pos,
                    msg: e.to_string(),
                },
                other => at_start(other),
            })
        } else {
            let (num, den) = self.ratio()?;
            Alpha::rational(num, den).map_err(at_start)
        }
    }
}

/// Parses `periodic:0110` or `mech:<alpha>[,rho=a/b]`.
pub fn parse_spec(text: &str) -> Result<WordSpec> {
    let mut c = Cursor {
        text: text.trim(),
        pos: 0,
    };
    let spec = if c.eat("periodic:") {
        let start = c.pos;
        let bits = c.rest();
        if bits.is_empty() {
            return Err(c.err("periodic pattern must be nonempty"));
        }
        if let Some(i) = bits.find(|ch| ch != '0' && ch != '1') {
            return Err(Error::Parse {
                pos: start + i,
                msg: "pattern letters must be 0 or 1".into(),
            });
        }
        c.pos = c.text.len();
        WordSpec::periodic(bits.parse::<FiniteWord>()?)?
    } else if c.eat("mech:") {
        let alpha_pos = c.pos;
        let alpha = c.alpha()?;
        let mut rho = Ratio::zero();
        let mut rho_pos = c.pos;
        if c.eat(",") {
            c.expect("rho=")?;
            rho_pos = c.pos;
            let (num, den) = c.ratio()?;
            rho = Ratio::new(num, den);
        }
        if !c.rest().is_empty() {
            return Err(c.err("unexpected trailing input"));
        }
        WordSpec::mechanical(alpha, rho).map_err(|e| Error::Parse {
            pos: if alpha.in_open_unit_interval() {
                rho_pos
            } else {
                alpha_pos
            },
            msg: e.to_string(),
        })?
    } else {
        return Err(c.err("expected \"periodic:\" or \"mech:\""));
    };
    if !c.rest().is_empty() {
        return Err(c.err("unexpected trailing input"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grammar_cases() {
        assert_eq!(
            parse_spec("mech:1/2").unwrap(),
            WordSpec::mechanical_zero(Alpha::rational(1, 2).unwrap()).unwrap()
        );
        assert_eq!(
            parse_spec("mech:2/4").unwrap(),
            WordSpec::mechanical_zero(Alpha::rational(1, 2).unwrap()).unwrap()
        );
        assert_eq!(
            parse_spec("mech:(3-1*sqrt(5))/2").unwrap(),
            WordSpec::mechanical_zero(Alpha::surd(3, -1, 5, 2).unwrap()).unwrap()
        );
        assert_eq!(
            parse_spec("periodic:001").unwrap(),
            WordSpec::periodic("001".parse().unwrap()).unwrap()
        );
        let with_rho = parse_spec("mech:1/3,rho=1/2").unwrap();
        assert_eq!(with_rho.to_string(), "mech:1/3,rho=1/2");
    }

    #[test]
    fn rejects_square_radicand() {
        let err = parse_spec("mech:(1+1*sqrt(4))/2").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 15, .. }), "{err:?}");
    }

    #[test]
    fn rejects_malformed() {
        for (text, pos) in [
            ("mech:3/2", 5),
            ("mech:0/1", 5),
            ("mech:1/0", 7),
            ("periodic:", 9),
            ("periodic:0120", 11),
            ("mech:1/2,rho=3/2", 13),
            ("mech:1/2x", 8),
            ("mech:(1*sqrt(2))/2", 7),
            ("sturm:1/2", 0),
        ] {
            match parse_spec(text) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    fn arb_spec() -> impl Strategy<Value = WordSpec> {
        let periodic = proptest::collection::vec(0u8..2, 1..12)
            .prop_map(|v| WordSpec::periodic(FiniteWord::from_letters(v).unwrap()).unwrap());
        let rational = (1i64..50, 2i64..50, 0i64..7, 1i64..8).prop_filter_map(
            "slope in (0,1)",
            |(a, b, rn, rd)| {
                let alpha = Alpha::rational(a, b).ok()?;
                let rho = Ratio::new(rn % rd, rd);
                WordSpec::mechanical(alpha, rho).ok()
            },
        );
        let surd = (-20i64..20, -5i64..6, 2i64..40, 1i64..30).prop_filter_map(
            "surd in (0,1)",
            |(p, q, d, r)| {
                let alpha = Alpha::surd(p, q, d, r).ok()?;
                WordSpec::mechanical_zero(alpha).ok()
            },
        );
        prop_oneof![periodic, rational, surd]
    }

    proptest! {
        #[test]
        fn render_then_parse_round_trips(spec in arb_spec()) {
            prop_assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}
