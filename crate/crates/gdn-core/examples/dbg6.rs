use gdn_core::powers::EntryPolyMatrix;
use gdn_core::spectral::gdn_spectral;
use gdn_core::ToleranceConfig;

fn main() {
    let a = gdn_core::constructions::paper_matrix(gdn_core::constructions::PaperMatrix::Ce6);
    let sd = gdn_spectral(&a, &ToleranceConfig::default()).unwrap();
    println!("lambdas: {:?}", sd.lambdas);
    println!("cond_s:  {:e}", sd.cond_s);
    let epm = EntryPolyMatrix::from_spectral(&sd);
    let p = epm.poly(0, 2); // entry (1,3)
    for t in p.terms() {
        println!("coeff {:+.17e}  base {:.17e}", t.coeff, t.base);
    }
    for al in [6.9, 6.99, 6.999, 6.9994, 7.0, 7.0002, 7.001] {
        let (s, g) = p.eval_scaled(al);
        println!("alpha {al}: s={s:+.6e} g={g:.3e} sign {}", p.sign_at(al));
    }
}
