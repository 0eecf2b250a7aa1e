//! Test-only character oracle, independent of the border-strip recursion.
//!
//! Characters are reconstructed from permutation-level data: for every
//! permutation we count fixed row-tabloids of each shape, giving the
//! permutation-module characters, and then orthogonalize those against the
//! class-weighted inner product in reverse-lexicographic shape order. No
//! code from the recursion path is involved, so agreement is meaningful.

use std::collections::HashMap;

use saxlkit_core::{partitions_of, Partition};

/// All permutations of `0..n` (n small).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

fn cycle_lengths(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    cycles
}

/// Number of row-tabloids of shape `caps` fixed by a permutation with the
/// given cycle lengths: each cycle must land inside one row.
fn fixed_tabloids(cycles: &[u32], caps: &mut Vec<u32>) -> i64 {
    if cycles.is_empty() {
        return 1;
    }
    let c = cycles[0];
    let rest = &cycles[1..];
    let mut total = 0;
    let mut tried: Vec<u32> = Vec::new();
    for row in 0..caps.len() {
        let cap = caps[row];
        if cap < c || tried.contains(&cap) {
            continue;
        }
        tried.push(cap);
        // identical capacities are interchangeable; count multiplicity
        let mult = caps.iter().filter(|&&x| x == cap).count() as i64;
        // place the cycle into one specific row of this capacity
        let idx = caps.iter().position(|&x| x == cap).unwrap();
        caps[idx] -= c;
        total += mult * fixed_tabloids(rest, caps);
        caps[idx] += c;
    }
    total
}

/// Exact character table computed from permutations: maps
/// `(shape, class)` to the character value. Classes are labelled by their
/// sorted cycle types. Also returns brute-forced class cardinalities.
pub struct BruteTable {
    pub shapes: Vec<Partition>,
    pub classes: Vec<Partition>,
    pub class_cardinality: HashMap<Partition, i64>,
    values: HashMap<(Partition, Partition), i64>,
}

impl BruteTable {
    pub fn value(&self, shape: &Partition, class: &Partition) -> i64 {
        self.values[&(shape.clone(), class.clone())]
    }
}

pub fn brute_character_table(n: usize) -> BruteTable {
    let shapes: Vec<Partition> = partitions_of(n as u64).collect();
    let classes = shapes.clone();
    let mut class_cardinality: HashMap<Partition, i64> = HashMap::new();
    for perm in permutations(n) {
        let ct = Partition::from_unsorted(cycle_lengths(&perm));
        *class_cardinality.entry(ct).or_insert(0) += 1;
    }
    let factorial: i64 = (1..=n as i64).product();
    assert_eq!(class_cardinality.values().sum::<i64>(), factorial);

    // permutation-module characters per (shape, class)
    let mut perm_char: HashMap<(Partition, Partition), i64> = HashMap::new();
    for shape in &shapes {
        let mut caps: Vec<u32> = shape.parts().to_vec();
        for class in &classes {
            let fixed = fixed_tabloids(class.parts(), &mut caps);
            perm_char.insert((shape.clone(), class.clone()), fixed);
        }
    }

    // orthogonalize in reverse-lexicographic order (a linear extension of
    // dominance from the top), leaving the irreducible characters
    let inner = |f: &dyn Fn(&Partition) -> i64, g: &dyn Fn(&Partition) -> i64| -> i64 {
        let weighted: i64 = classes
            .iter()
            .map(|c| class_cardinality[c] * f(c) * g(c))
            .sum();
        assert_eq!(weighted % factorial, 0, "inner product must be integral");
        weighted / factorial
    };
    let mut values: HashMap<(Partition, Partition), i64> = HashMap::new();
    let mut done: Vec<Partition> = Vec::new();
    for shape in &shapes {
        let mut current: HashMap<Partition, i64> = classes
            .iter()
            .map(|c| (c.clone(), perm_char[&(shape.clone(), c.clone())]))
            .collect();
        for prev in &done {
            let coeff = inner(
                &|c| current[c],
                &|c| values[&(prev.clone(), c.clone())],
            );
            if coeff != 0 {
                for c in &classes {
                    *current.get_mut(c).unwrap() -= coeff * values[&(prev.clone(), c.clone())];
                }
            }
        }
        let norm = inner(&|c| current[c], &|c| current[c]);
        assert_eq!(norm, 1, "residual must be irreducible for shape {shape}");
        for c in &classes {
            values.insert((shape.clone(), c.clone()), current[c]);
        }
        done.push(shape.clone());
    }
    BruteTable { shapes, classes, class_cardinality, values }
}
