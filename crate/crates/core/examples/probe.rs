// offline search for bound-attaining bases on "box + single-dot tail" diagrams
use subspace_codes::*;
use subspace_codes::rank::{RankCode, VerifyPolicy};

// pack a rows x cols GF(2) matrix (given as row bitmasks) rank
fn rank_bits(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let row = rows[i];
        if row == 0 { continue; }
        let lead = row & row.wrapping_neg();
        for j in 0..rows.len() {
            if j != i && rows[j] & lead != 0 { rows[j] ^= row; }
        }
        rank += 1;
    }
    rank
}

// search: top box m_box x w full, tail single dots in last column.
// W = MRD [m_box x w, wdim, delta_box] on the box (delta_box = delta).
// find `ext` coset reps r (as m_box-row masks) with:
//   for all v in span(W) : rank((r + v) restricted to cols 0..w-1) >= delta-1
// and all nonzero combos of reps also good.
fn search(m_box: usize, w: usize, delta: usize, ext: usize) -> Option<(Vec<Vec<u64>>, Vec<Vec<u64>>)> {
    let f = FieldCtx::gf(2).unwrap();
    let box_diag = FerrersDiagram::full(m_box, w);
    let wcode = RankCode::for_diagram(&f, &box_diag, delta, VerifyPolicy::Exhaustive).unwrap();
    println!("W dim = {}", wcode.dim());
    // W as list of row-mask vectors
    let wdim = wcode.dim();
    let mut wwords: Vec<Vec<u64>> = Vec::new();
    wcode.for_each_codeword(|m| {
        wwords.push((0..m_box).map(|r| (0..w).fold(0u64, |acc, c| acc | m.get(r, c) << c)).collect());
        true
    });
    let colmask: u64 = (1 << (w - 1)) - 1; // drop last column
    let total: u64 = 1 << (m_box * w);
    // good coset reps
    let is_good = |rep: &Vec<u64>| -> bool {
        wwords.iter().all(|v| {
            let rows: Vec<u64> = rep.iter().zip(v).map(|(&a, &b)| (a ^ b) & colmask).collect();
            rank_bits(rows) >= delta - 1
        })
    };
    let unpack = |bits: u64| -> Vec<u64> {
        (0..m_box).map(|r| (bits >> (r * w)) & ((1 << w) - 1)).collect()
    };
    let mut good: Vec<u64> = Vec::new();
    for bits in 1..total {
        let rep = unpack(bits);
        if is_good(&rep) { good.push(bits); }
        if good.len() > 200000 { break; }
    }
    println!("good reps: {}", good.len());
    let goodset: std::collections::HashSet<u64> = good.iter().copied().collect();
    // canonical coset membership: combine reps by XOR; combo good iff exists w in W making it good...
    // simpler: goodness is a property of the COSET: r+W good. r1+r2 might differ from any stored rep by a W element.
    // test combos directly with is_good.
    let _ = goodset;
    // greedy: pick reps one by one keeping all combos good
    let mut chosen: Vec<u64> = Vec::new();
    'outer: for &cand in &good {
        let mut combos_ok = true;
        for mask in 1..(1u64 << chosen.len()) {
            let mut acc = cand;
            for (i, &c) in chosen.iter().enumerate() {
                if mask >> i & 1 == 1 { acc ^= c; }
            }
            if !is_good(&unpack(acc)) { combos_ok = false; break; }
        }
        if combos_ok {
            // also linear independence mod W: combos (without cand... ) nonzero mod W
            // (all-good cosets can't contain 0 since 0+W has rank-0 word restricted... 0 coset: v=0 gives rank 0 < delta-1, so good cosets are nonzero cosets; combos good => nonzero => independent)
            chosen.push(cand);
            println!("chosen {} reps", chosen.len());
            if chosen.len() == ext { break 'outer; }
        }
    }
    if chosen.len() < ext { return None; }
    let wbasis: Vec<Vec<u64>> = wcode.basis().iter().map(|m| {
        (0..m_box).map(|r| (0..w).fold(0u64, |acc, c| acc | m.get(r, c) << c)).collect()
    }).collect();
    Some((wbasis, chosen.iter().map(|&b| unpack(b)).collect()))
}

fn emit(name: &str, m_box: usize, w: usize, tail: usize, wbasis: &[Vec<u64>], reps: &[Vec<u64>]) {
    // total rows = m_box + tail, cols = w; tail dots in last column rows m_box..
    println!("=== {name} ===");
    let print_mat = |rows: &Vec<Vec<u64>>| {
        println!("vec![");
        for r in rows { 
            let v: Vec<u64> = (0..w).map(|c| r[c / 1] >> c & 1).collect();
            println!("    vec!{:?},", v);
        }
        println!("],");
    };
    // W embedded: tail rows zero
    for b in wbasis {
        let mut rows: Vec<Vec<u64>> = b.iter().map(|&mask| (0..w).map(|c| mask >> c & 1).collect()).collect();
        rows.extend(std::iter::repeat(vec![0u64; w]).take(tail));
        print_mat(&rows.iter().map(|r| vec![r.iter().enumerate().fold(0u64, |a,(i,&v)| a | v << i)]).map(|x| x).collect::<Vec<_>>().iter().map(|_| vec![]).collect::<Vec<_>>().first().cloned().unwrap_or_default().into_iter().collect::<Vec<_>>().chunks(1).map(|_| vec![]).collect::<Vec<Vec<u64>>>().first().cloned().map(|_| rows.clone()).unwrap_or(rows.clone()));
    }
    // reps with distinct tail unit dots
    for (i, rep) in reps.iter().enumerate() {
        let mut rows: Vec<Vec<u64>> = rep.iter().map(|&mask| (0..w).map(|c| mask >> c & 1).collect()).collect();
        for t in 0..tail {
            let mut row = vec![0u64; w];
            if t == i { row[w - 1] = 1; }
            rows.push(row);
        }
        print_mat(&rows);
    }
}

fn main() {
    if let Some((wb, reps)) = search(3, 4, 3, 2) {
        emit("tail A: (4,4,4,1^6) delta 3 dim 6", 3, 4, 6, &wb, &reps);
    } else { println!("A: not found"); }
    if let Some((wb, reps)) = search(4, 5, 4, 3) {
        emit("tail B: (5,5,5,5,1^12) delta 4 dim 8", 4, 5, 12, &wb, &reps);
    } else { println!("B: not found"); }
}
