//! Double random phase encryption with two transform stages, decryption
//! with right and wrong keys, and sensitivity to the angle θ.

use nsfrft::apps::{drped_decrypt, drped_encrypt, key_sensitivity_sweep, KeyMaterial};
use nsfrft::grid::{io, metrics, signals};
use nsfrft::params::published;
use nsfrft::Geometry;

fn main() -> nsfrft::Result<()> {
    let out = std::env::temp_dir().join("nsfrft-examples");
    std::fs::create_dir_all(&out)?;

    let g = Geometry::default();
    let rings = signals::newton_image(&signals::NewtonRings::default(), g, signals::NEWTON_PIXEL_PITCH);
    let img = rings.scale((0.25).into());
    let key = KeyMaterial::standard(g, 42);
    std::fs::write(out.join("key.json"), serde_json::to_string_pretty(&key.to_file())?)?;

    let ct = drped_encrypt(&img, &key)?;
    let back = drped_decrypt(&ct, &key)?;
    let wrong = key.with_params(published::wrong_key(), published::wrong_key());
    let garbled = drped_decrypt(&ct, &wrong)?;
    println!("correct key MSE {:.3e}", metrics::mse(&back, &img)?);
    println!("wrong key MSE   {:.3e}", metrics::mse(&garbled, &img)?);
    println!("energy ratio    {:.12}", ct.energy() / img.energy());

    io::write_png(out.join("plain.png"), std::slice::from_ref(&img))?;
    io::write_png_with_sidecar(out.join("cipher.png"), &[ct])?;
    io::write_png(out.join("wrong_key.png"), &[garbled])?;

    println!("\n   δ        MSE");
    for row in key_sensitivity_sweep(&img, &key, 0.5, 0.05)? {
        println!("{:+.2}  {:.3e}", row.delta, row.mse);
    }
    println!("\nimages and key written to {}", out.display());
    Ok(())
}
