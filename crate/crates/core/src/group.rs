//! Finite groups as Cayley tables with a fixed element enumeration.
//!
//! The enumeration order of each family is part of the contract: it fixes the
//! coordinate order of every generator matrix built over the group.
//!
//! | family | enumeration |
//! |---|---|
//! | `cyclic(n)` | `1, g, g2, ...` |
//! | `dihedral(2n)` | `1, x, ..., x^(n-1), y, xy, ..., x^(n-1)y` with `yx = x^-1 y` |
//! | `dihedral_ab(2n)` | `1, b, a, ab, a2, a2b, ...` (index `2i+j` for `a^i b^j`) |
//! | `semidirect(m,k,r)` | `b^j a^i` at index `j*m+i`, with `b a b^-1 = a^r` |
//! | `alt4` | `(), (1,2)(3,4), (1,3,2), (1,4,3), (2,3,4), (1,2,4), (1,3,4), (1,4,2), (1,2,3), (1,3)(2,4), (1,4)(2,3), (2,4,3)` |
//! | `product(A,B)` | `(a,b)` at index `a*|B|+b` |

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Upper bound on the order of explicitly supplied tables.
pub const MAX_EXPLICIT_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFamily {
    Cyclic(usize),
    /// Dihedral group of the given order (`2n`).
    Dihedral(usize),
    /// Dihedral group of the given order enumerated as `a^i b^j`, interleaved.
    DihedralAb(usize),
    Alt4,
    Semidirect { m: usize, k: usize, r: usize },
    Product(Box<GroupFamily>, Box<GroupFamily>),
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    n: usize,
    table: Vec<u16>,
    inv: Vec<usize>,
    labels: Vec<String>,
    family: GroupFamily,
}

/// Axiom failures found by [`check_table`]; empty on success.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupReport {
    pub failures: Vec<String>,
}

impl GroupReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn mix(state: &mut u64) -> u64 {
    // splitmix64
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Checks the group axioms of a square table with identity at index 0.
///
/// Associativity is exhaustive up to order 64 and sampled (10^5 triples) above.
pub fn check_table(table: &[Vec<usize>]) -> GroupReport {
    let mut failures = Vec::new();
    let n = table.len();
    if n == 0 {
        failures.push("empty table".to_string());
        return GroupReport { failures };
    }
    if let Some(i) = table.iter().position(|row| row.len() != n) {
        failures.push(format!("row {i} has length {} (expected {n})", table[i].len()));
        return GroupReport { failures };
    }
    if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| table[i][j] >= n) {
        failures.push(format!("entry ({i},{j}) = {} out of range", table[i][j]));
        return GroupReport { failures };
    }
    for i in 0..n {
        if table[0][i] != i || table[i][0] != i {
            failures.push(format!("index 0 is not an identity at {i}"));
            break;
        }
    }
    for i in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            seen_row[table[i][j]] = true;
            seen_col[table[j][i]] = true;
        }
        if seen_row.iter().any(|s| !s) {
            failures.push(format!("row {i} is not a permutation (Latin square violated)"));
        }
        if seen_col.iter().any(|s| !s) {
            failures.push(format!("column {i} is not a permutation (Latin square violated)"));
        }
    }
    for i in 0..n {
        let right = (0..n).find(|&j| table[i][j] == 0);
        match right {
            Some(j) if table[j][i] == 0 => {}
            _ => failures.push(format!("element {i} has no two-sided inverse")),
        }
    }
    let mut assoc_fail = None;
    if n <= 64 {
        'outer: for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        assoc_fail = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
    } else {
        let mut state = 0x5eed_u64;
        for _ in 0..100_000 {
            let a = (mix(&mut state) % n as u64) as usize;
            let b = (mix(&mut state) % n as u64) as usize;
            let c = (mix(&mut state) % n as u64) as usize;
            if table[table[a][b]][c] != table[a][table[b][c]] {
                assoc_fail = Some((a, b, c));
                break;
            }
        }
    }
    if let Some((a, b, c)) = assoc_fail {
        failures.push(format!("associativity fails at ({a},{b},{c})"));
    }
    GroupReport { failures }
}

fn pow_label(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{e}"),
    }
}

fn join_label(parts: &[String]) -> String {
    let s: String = parts.concat();
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

// Permutations of {1,2,3,4} stored as images of 0..4; composed left to right:
// i^(st) = (i^s)^t.
const ALT4_CYCLES: [&[&[usize]]; 12] = [
    &[],
    &[&[1, 2], &[3, 4]],
    &[&[1, 3, 2]],
    &[&[1, 4, 3]],
    &[&[2, 3, 4]],
    &[&[1, 2, 4]],
    &[&[1, 3, 4]],
    &[&[1, 4, 2]],
    &[&[1, 2, 3]],
    &[&[1, 3], &[2, 4]],
    &[&[1, 4], &[2, 3]],
    &[&[2, 4, 3]],
];

fn cycles_to_perm(cycles: &[&[usize]]) -> [usize; 4] {
    let mut p = [0, 1, 2, 3];
    for cyc in cycles {
        for (i, &a) in cyc.iter().enumerate() {
            p[a - 1] = cyc[(i + 1) % cyc.len()] - 1;
        }
    }
    p
}

fn cycles_label(cycles: &[&[usize]]) -> String {
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", inner.join(","))
        })
        .collect()
}

impl Group {
    pub fn make(family: GroupFamily) -> Result<Group> {
        let (table, labels): (Vec<Vec<usize>>, Vec<String>) = match &family {
            GroupFamily::Cyclic(n) => {
                let n = *n;
                if n == 0 {
                    return Err(Error::NotAGroup("cyclic group of order 0".into()));
                }
                let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
                let labels = (0..n).map(|i| join_label(&[pow_label("g", i)])).collect();
                (table, labels)
            }
            GroupFamily::Dihedral(order) | GroupFamily::DihedralAb(order) => {
                let order = *order;
                if order < 2 || order % 2 != 0 {
                    return Err(Error::NotAGroup(format!("dihedral order {order} must be even and >= 2")));
                }
                let n = order / 2;
                let interleaved = matches!(family, GroupFamily::DihedralAb(_));
                // (i, j) = rot^i ref^j; ref rot = rot^-1 ref.
                let index = |i: usize, j: usize| if interleaved { 2 * i + j } else { j * n + i };
                let mut table = vec![vec![0; order]; order];
                let mut labels = vec![String::new(); order];
                let (rot, refl) = if interleaved { ("a", "b") } else { ("x", "y") };
                for i in 0..n {
                    for j in 0..2 {
                        labels[index(i, j)] = join_label(&[pow_label(rot, i), pow_label(refl, j)]);
                        for k in 0..n {
                            for l in 0..2 {
                                let k2 = if j == 1 { (n - k) % n } else { k };
                                table[index(i, j)][index(k, l)] = index((i + k2) % n, (j + l) % 2);
                            }
                        }
                    }
                }
                (table, labels)
            }
            GroupFamily::Alt4 => {
                let perms: Vec<[usize; 4]> = ALT4_CYCLES.iter().map(|c| cycles_to_perm(c)).collect();
                let mut table = vec![vec![0; 12]; 12];
                for (a, pa) in perms.iter().enumerate() {
                    for (b, pb) in perms.iter().enumerate() {
                        let prod = [pb[pa[0]], pb[pa[1]], pb[pa[2]], pb[pa[3]]];
                        table[a][b] = perms.iter().position(|p| *p == prod).expect("A4 is closed");
                    }
                }
                (table, ALT4_CYCLES.iter().map(|c| cycles_label(c)).collect())
            }
            GroupFamily::Semidirect { m, k, r } => {
                let (m, k, r) = (*m, *k, *r);
                if m == 0 || k == 0 {
                    return Err(Error::InvalidAction("factor orders must be positive".into()));
                }
                if gcd(r, m) != 1 {
                    return Err(Error::InvalidAction(format!("gcd({r},{m}) != 1")));
                }
                if pow_mod(r, k, m) != 1 % m {
                    return Err(Error::InvalidAction(format!("{r}^{k} is not 1 mod {m}")));
                }
                // b^-l a b^l = a^(s^l) where s = r^-1 mod m
                let s = (1..=m).find(|&s| (s * r) % m == 1 % m).unwrap_or(1);
                let mut table = vec![vec![0; m * k]; m * k];
                let mut labels = Vec::with_capacity(m * k);
                for j in 0..k {
                    for i in 0..m {
                        labels.push(join_label(&[pow_label("b", j), pow_label("a", i)]));
                        for l in 0..k {
                            let sl = pow_mod(s, l, m);
                            for i2 in 0..m {
                                let new_i = (i * sl + i2) % m;
                                table[j * m + i][l * m + i2] = ((j + l) % k) * m + new_i;
                            }
                        }
                    }
                }
                (table, labels)
            }
            GroupFamily::Product(a, b) => {
                let ga = Group::make((**a).clone())?;
                let gb = Group::make((**b).clone())?;
                let (na, nb) = (ga.order(), gb.order());
                let mut table = vec![vec![0; na * nb]; na * nb];
                let mut labels = Vec::with_capacity(na * nb);
                for x in 0..na {
                    for y in 0..nb {
                        labels.push(format!("{}:{}", ga.labels[x], gb.labels[y]));
                        for u in 0..na {
                            for v in 0..nb {
                                table[x * nb + y][u * nb + v] = ga.mul(x, u) * nb + gb.mul(y, v);
                            }
                        }
                    }
                }
                (table, labels)
            }
            GroupFamily::Explicit(table) => {
                if table.len() > MAX_EXPLICIT_ORDER {
                    return Err(Error::NotAGroup(format!("explicit tables are capped at {MAX_EXPLICIT_ORDER}")));
                }
                let labels = (0..table.len()).map(|i| if i == 0 { "1".to_string() } else { format!("e{i}") }).collect();
                (table.clone(), labels)
            }
        };
        let report = check_table(&table);
        if !report.is_ok() {
            return Err(Error::NotAGroup(report.failures.join("; ")));
        }
        let n = table.len();
        let inv = (0..n).map(|i| (0..n).find(|&j| table[i][j] == 0).expect("checked")).collect();
        Ok(Group { n, table: table.iter().flatten().map(|&x| x as u16).collect(), inv, labels, family })
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        Group::make(GroupFamily::Cyclic(n))
    }
    pub fn dihedral(order: usize) -> Result<Group> {
        Group::make(GroupFamily::Dihedral(order))
    }

    pub fn order(&self) -> usize {
        self.n
    }
    pub fn family(&self) -> &GroupFamily {
        &self.family
    }
    pub fn identity(&self) -> usize {
        0
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }
    /// Looks up an element by label, or by `#index`.
    pub fn index_of(&self, label: &str) -> Result<usize> {
        let label = label.trim();
        if let Some(idx) = label.strip_prefix('#') {
            if let Ok(i) = idx.parse::<usize>() {
                if i < self.n {
                    return Ok(i);
                }
            }
        }
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.mul(i, j)).collect()).collect()
    }
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
    pub fn involution_count(&self) -> usize {
        (1..self.n).filter(|&a| self.mul(a, a) == 0).count()
    }
    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }
    /// `p`-part of the group order.
    pub fn p_part(&self, p: u64) -> u64 {
        let mut n = self.n as u64;
        let mut part = 1;
        while p > 1 && n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
        part
    }
    /// Whether the group is cyclic with `g = #1` generating in canonical order `g^i = #i`.
    pub fn is_canonical_cyclic(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.mul(i, j) == (i + j) % self.n))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(base: usize, e: usize, m: usize) -> usize {
    let mut r = 1 % m;
    for _ in 0..e {
        r = r * base % m;
    }
    r
}
