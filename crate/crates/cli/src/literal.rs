//! Complex literals `a+bi`: `1+1i`, `2i`, `-0.5`, `i`, `1-i`, `2.5e-3+4i`.

use num_complex::Complex64;

fn real(text: &str) -> Option<f64> {
    if text.is_empty() || text.contains(['i', 'n', 'N', 'I']) {
        return None;
    }
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Coefficient of `i`: a number, or empty / a bare sign for unit magnitude.
fn imag(text: &str) -> Option<f64> {
    match text {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => real(t),
    }
}

pub fn parse_complex(text: &str) -> Option<Complex64> {
    let Some(body) = text.strip_suffix('i') else {
        return real(text).map(|re| Complex64::new(re, 0.0));
    };
    // the sign separating the parts; a sign after an exponent marker belongs
    // to the number
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Some(Complex64::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

/// `P,S,L`
pub fn parse_point(text: &str) -> Option<[Complex64; 3]> {
    let parts: Vec<&str> = text.split(',').collect();
    let [p, s, l] = parts.as_slice() else { return None };
    Some([parse_complex(p)?, parse_complex(s)?, parse_complex(l)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Option<Complex64> {
        Some(Complex64::new(re, im))
    }

    #[test]
    fn literals() {
        assert_eq!(parse_complex("1+1i"), c(1.0, 1.0));
        assert_eq!(parse_complex("2i"), c(0.0, 2.0));
        assert_eq!(parse_complex("-0.5"), c(-0.5, 0.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("1+i"), c(1.0, 1.0));
        assert_eq!(parse_complex("+3-2.5i"), c(3.0, -2.5));
        assert_eq!(parse_complex("1e-3+2E+1i"), c(0.001, 20.0));
        assert_eq!(parse_complex("-1e-3i"), c(0.0, -0.001));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1+", "ii", "1+2j", "1 + 2i", "inf", "nan", "1+infi", "x", "1++2i", "--1"] {
            assert_eq!(parse_complex(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn points() {
        let w = parse_point("i,1+i,2i").unwrap();
        assert_eq!(w, [Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0)]);
        assert_eq!(parse_point("i,1+i"), None);
        assert_eq!(parse_point("i,1+i,2i,3"), None);
    }
}
