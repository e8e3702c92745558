use regset::subgroup::generate_subgroup;
use regset::{DihedralFamily, Error, Group, Result, Subgroup};

/// Resolves a `--subgroup` argument.
pub fn parse_subgroup(g: &Group, text: &str) -> Result<Subgroup> {
    let bad = || Error::NotSubgroup(format!("cannot parse selector `{text}`"));
    let (kind, rest) = text.split_once('=').ok_or_else(bad)?;
    let numbers = || -> Result<Vec<usize>> {
        rest.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect()
    };
    match kind.trim() {
        "gens" => {
            let gens = g.parse_elements(rest)?;
            Ok(generate_subgroup(g, &gens.to_vec()))
        }
        "indices" => Subgroup::from_elements(g, g.set_of(numbers()?)),
        "cyclic" => match numbers()?[..] {
            [t] => Subgroup::dihedral(g, DihedralFamily::Cyclic { t }),
            _ => Err(bad()),
        },
        "mixed" => match numbers()?[..] {
            [t, s] => Subgroup::dihedral(g, DihedralFamily::Mixed { t, s }),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

pub fn parse_pair(text: &str) -> Option<(usize, usize)> {
    let (a, b) = text.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_agree() {
        let g = Group::dihedral(4).unwrap();
        let by_gens = parse_subgroup(&g, "gens=a2,ab").unwrap();
        let by_family = parse_subgroup(&g, "mixed=2,1").unwrap();
        let by_indices = parse_subgroup(&g, "indices=0,2,5,7").unwrap();
        assert_eq!(by_gens.elements(), by_family.elements());
        assert_eq!(by_gens.elements(), by_indices.elements());
        assert!(parse_subgroup(&g, "indices=0,1").is_err());
        assert!(parse_subgroup(&g, "cyclic").is_err());
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("2, 3"), Some((2, 3)));
        assert_eq!(parse_pair("2"), None);
    }
}
