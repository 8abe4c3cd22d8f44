//! Parser for multiplicity lists.
//!
//! Accepts comma-separated entries, each either a plain integer or the
//! shorthand `MxK` meaning `K` repetitions of `M`; forms may be mixed, e.g.
//! `--mults 3,2x7,1`. An empty string means no assigned points.

pub fn parse_mults(input: &str) -> Result<Vec<i64>, String> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for token in trimmed.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(format!("empty entry in multiplicity list {input:?}"));
        }
        if let Some((m_str, k_str)) = token.split_once(['x', 'X']) {
            let m: i64 = m_str
                .trim()
                .parse()
                .map_err(|_| format!("bad multiplicity {m_str:?} in {token:?}"))?;
            let k: usize = k_str
                .trim()
                .parse()
                .map_err(|_| format!("bad repeat count {k_str:?} in {token:?}"))?;
            out.extend(std::iter::repeat(m).take(k));
        } else {
            let m: i64 = token
                .parse()
                .map_err(|_| format!("bad multiplicity {token:?}"))?;
            out.push(m);
        }
    }
    Ok(out)
}
