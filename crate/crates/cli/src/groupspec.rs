//! `cyclic:N | product:N1xN2[x...] | sym:N | dihedral:N | quaternion | file:PATH`

use std::fs;

use parfus_core::group::{abelian_product, cyclic, dihedral, quaternion, symmetric, FiniteGroup, Subgroup};
use serde::Deserialize;

#[derive(Deserialize)]
struct CayleyFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    label: Option<String>,
}

fn number(s: &str, what: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("bad {what} `{s}` in group spec"))
}

pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup, String> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let g = match kind {
        "cyclic" => cyclic(number(arg, "order")?),
        "product" => {
            let fs: Vec<usize> = arg.split('x').map(|p| number(p, "factor")).collect::<Result<_, _>>()?;
            abelian_product(&fs)
        }
        "sym" => symmetric(number(arg, "degree")?),
        "dihedral" => dihedral(number(arg, "polygon size")?),
        "quaternion" if arg.is_empty() || arg == "8" => Ok(quaternion()),
        "file" => return load_file(arg),
        _ => {
            return Err(format!(
                "unknown group spec `{spec}`; expected cyclic:N, product:N1xN2, sym:N, dihedral:N, quaternion or file:PATH"
            ))
        }
    };
    g.map_err(|e| format!("{spec}: {e}"))
}

fn load_file(path: &str) -> Result<FiniteGroup, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let f: CayleyFile = serde_json::from_str(&text).map_err(|e| format!("invalid Cayley JSON in {path}: {e}"))?;
    if f.table.len() != f.order {
        return Err(format!("invalid Cayley JSON in {path}: order {} but {} rows", f.order, f.table.len()));
    }
    let g = FiniteGroup::from_cayley(&f.table).map_err(|e| format!("invalid Cayley table in {path}: {e}"))?;
    Ok(match f.label {
        Some(l) => g.with_label(l),
        None => g,
    })
}

/// Target of `--subgroup`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    All,
    Gens(Vec<usize>),
}

pub fn parse_subgroup_spec(s: &str) -> Result<SubgroupSpec, String> {
    if s == "all" {
        return Ok(SubgroupSpec::All);
    }
    let Some(list) = s.strip_prefix("gens:") else {
        return Err(format!("bad subgroup spec `{s}`; expected gens:i,j or all"));
    };
    if list.trim().is_empty() {
        return Ok(SubgroupSpec::Gens(Vec::new()));
    }
    list.split(',').map(|p| number(p, "generator index")).collect::<Result<_, _>>().map(SubgroupSpec::Gens)
}

pub fn resolve_subgroups(g: &FiniteGroup, s: &SubgroupSpec) -> Result<Vec<Subgroup>, String> {
    match s {
        SubgroupSpec::All => Ok(parfus_core::group::subgroups(g)),
        SubgroupSpec::Gens(gens) => Subgroup::generated(g, gens).map(|h| vec![h]).map_err(|e| format!("--subgroup: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(parse_group_spec("cyclic:3").unwrap().order(), 3);
        let k = parse_group_spec("product:2x2").unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.is_abelian());
        assert_eq!((1..4).map(|x| k.element_order(x)).max(), Some(2));
        let s3 = parse_group_spec("sym:3").unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(parse_group_spec("quaternion").unwrap().order(), 8);
        assert_eq!(parse_group_spec("dihedral:4").unwrap().order(), 8);
        for bad in ["cyclic:", "cyclic:x", "torus:3", "product:2xx2", "file:/nonexistent/g.json"] {
            assert!(parse_group_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn cayley_file() {
        let dir = std::env::temp_dir().join(format!("parfus-spec-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join("z2.json");
        fs::write(&p, r#"{"order": 2, "table": [[0,1],[1,0]], "label": "Z2"}"#).unwrap();
        let g = parse_group_spec(&format!("file:{}", p.display())).unwrap();
        assert_eq!((g.order(), g.label()), (2, "Z2"));
        fs::write(&p, r#"{"order": 2, "table": [[0,1],[1,1]]}"#).unwrap();
        assert!(parse_group_spec(&format!("file:{}", p.display())).is_err());
        fs::write(&p, r#"{"order": 3, "table": [[0,1],[1,0]]}"#).unwrap();
        assert!(parse_group_spec(&format!("file:{}", p.display())).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn subgroup_specs() {
        assert_eq!(parse_subgroup_spec("gens:1,2").unwrap(), SubgroupSpec::Gens(vec![1, 2]));
        assert_eq!(parse_subgroup_spec("gens:").unwrap(), SubgroupSpec::Gens(vec![]));
        assert_eq!(parse_subgroup_spec("all").unwrap(), SubgroupSpec::All);
        assert!(parse_subgroup_spec("1,2").is_err());
        let z4 = cyclic(4).unwrap();
        let h = resolve_subgroups(&z4, &SubgroupSpec::Gens(vec![2])).unwrap();
        assert_eq!(h[0].mask(), 0b0101);
        assert!(resolve_subgroups(&z4, &SubgroupSpec::Gens(vec![9])).is_err());
    }
}
