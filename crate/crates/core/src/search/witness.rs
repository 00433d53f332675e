//! Text form of a witness: `q;size;t1,t2,...`, with `inf` for the point at
//! infinity.

use crate::error::{Error, Result};
use crate::geometry::Param;

pub fn format_param(q: u64, t: Param) -> String {
    if t as u64 == q {
        "inf".to_string()
    } else {
        t.to_string()
    }
}

pub fn parse_param(q: u64, s: &str) -> Result<Param> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") {
        return Ok(q as Param);
    }
    let t: u64 = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad parameter `{s}`")))?;
    if t >= q {
        return Err(Error::BadParameter(t as Param));
    }
    Ok(t as Param)
}

pub fn format_witness(q: u64, witness: &[Param]) -> String {
    let list: Vec<String> = witness.iter().map(|&t| format_param(q, t)).collect();
    format!("{q};{};{}", witness.len(), list.join(","))
}

/// Parses `q;size;list`, checking that the size matches the list.
pub fn parse_witness(s: &str) -> Result<(u64, Vec<Param>)> {
    let parts: Vec<&str> = s.trim().split(';').collect();
    let [q, size, list] = parts[..] else {
        return Err(Error::InvalidArgument(format!("expected `q;size;list`, got `{s}`")));
    };
    let q: u64 = q
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad order `{q}`")))?;
    let size: usize = size
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad size `{size}`")))?;
    let witness = if list.trim().is_empty() {
        Vec::new()
    } else {
        list.split(',').map(|t| parse_param(q, t)).collect::<Result<Vec<_>>>()?
    };
    if witness.len() != size {
        return Err(Error::InvalidArgument(format!(
            "size {size} does not match {} listed parameters",
            witness.len()
        )));
    }
    Ok((q, witness))
}
