//! Exact BEC construction of the (64,48) and (64,56) polar codes at ε = 3/10,
//! their systematic encoders, and their minimum distances.

use polarcat::exact::{parse_rational, to_f64};
use polarcat::polar;
use polarcat::spectrum::{code_wef, Budget};
use polarcat::BitVector;

fn main() -> polarcat::Result<()> {
    let eps = parse_rational("3/10")?;
    for k in [48, 56] {
        let d = polar::design(64, k, &eps)?;
        let worst_info = d.info_set.iter().map(|&i| &d.channel_erasure[i]).max().unwrap();
        println!("polar(64,{k}): frozen {:?}", d.frozen_set);
        println!("  worst information channel erasure = {:.6}", to_f64(worst_info));

        let code = d.systematic_code();
        let u = BitVector::from_bits(&(0..k).map(|i| i % 3 == 0).collect::<Vec<_>>());
        let c = code.encode(&u)?;
        assert_eq!(c.select(code.info_positions()), u);

        let wef = code_wef(&code, Budget::default())?;
        let d_min = wef.min_distance().unwrap();
        println!("  d_min = {d_min}, A_{d_min} = {}", wef.get(d_min));
    }
    Ok(())
}
