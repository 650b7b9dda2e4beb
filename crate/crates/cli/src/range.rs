use std::fmt;
use std::str::FromStr;

/// Inclusive range `A..B` of `n`; `A > B` is the empty range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub start: u64,
    pub end: u64,
}

impl NRange {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.start..=self.end
    }

    pub fn is_empty(&self) -> bool {
        self.start > self.end
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("invalid n value `{t}` in `{s}`"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start == 0 {
            return Err("n starts at 1".to_string());
        }
        Ok(NRange { start, end })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!("1..2".parse::<NRange>().unwrap().to_vec(), vec![1, 2]);
        assert_eq!("3..=5".parse::<NRange>().unwrap().to_vec(), vec![3, 4, 5]);
        assert_eq!("7".parse::<NRange>().unwrap().to_vec(), vec![7]);
        assert!("5..4".parse::<NRange>().unwrap().is_empty());
        assert!("0..3".parse::<NRange>().is_err());
        assert!("a..3".parse::<NRange>().is_err());
    }
}
