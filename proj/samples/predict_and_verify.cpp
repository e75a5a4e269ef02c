// Predicts the first blocks of sqrt(f_10(49)), checks them against the
// computed digits and prints the expansion in base 10 and base 100.

#include <schizo/schizo.hpp>

#include <iostream>

int main() {
    using namespace schizo;

    const PatternPrediction prediction = predict(10, 25, 3);
    for (const auto& block : prediction.blocks) {
        std::cout << "block " << block.l << ": start " << block.start_pos << ", "
                  << block.nonrep_len << " + " << block.rep_len << " digits\n";
    }

    const VerificationReport report = verify(10, 25, 3, 250);
    std::cout << (report.all_match() ? "all blocks match" : "mismatch") << "\n\n";

    const DigitString digits = sqrt_digits(10, 49, 166);
    std::cout << render(digits) << "\n\n";
    std::cout << render(regroup(digits, 2).digits) << '\n';
    return report.all_match() ? 0 : 1;
}
