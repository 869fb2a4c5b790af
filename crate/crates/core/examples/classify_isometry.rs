//! Exact displacement, translation length and classification of
//! auto-equivalences `S_i ↦ S_{π(i)}[m_i]`.

use catdyn::dynamics::{act, exact_report, AutoEquivalence};
use catdyn::semisimple::bridgeland_distance;

fn main() -> catdyn::Result<()> {
    for (perm, shifts) in [(vec![1, 0, 2], vec![1, 0, 2]), (vec![1, 2, 0], vec![1, -2, 4]), (vec![1, 0], vec![3, -3])] {
        let alpha = AutoEquivalence::new(perm, shifts)?;
        let rep = exact_report(&alpha)?;
        let witness = rep.attained_at.clone().expect("witness");
        println!(
            "{:?} {:?}: k = {}, M^k exponents {:?}, d = {}, l = {}, {:?} / {:?}",
            alpha.permutation(),
            alpha.shifts(),
            rep.order_k,
            rep.diagonal_exponents,
            rep.eventual_displacement,
            rep.translation_length,
            rep.classification,
            rep.paper_classification,
        );
        println!("  d(sigma*, alpha sigma*) = {:.12}", bridgeland_distance(&witness, &act(&alpha, &witness)?)?);
    }
    Ok(())
}
