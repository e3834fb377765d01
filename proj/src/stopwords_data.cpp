#include "qiraa/preprocess.hpp"

namespace qiraa {

// Shipped stop-word list: MSA function words (pronouns, demonstratives,
// relatives, prepositions with common pronoun fusions, conjunctions and
// particles, copular verbs). Entries are written in normalized form: alif
// variants folded to bare alif, alif maqsura written as yeh.
const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
        // pronouns
        "انا", "نحن", "انت", "انتم", "هو", "هي", "هما", "هم", "هن",
        "اياه", "نفسه", "نفسها",
        // demonstratives
        "هذا", "هذه", "هذان", "هاتان", "هؤلاء", "ذلك", "تلك", "اولئك",
        "هنا", "هناك", "هنالك",
        // relatives and interrogatives
        "الذي", "التي", "اللذان", "اللتان", "الذين", "اللاتي", "اللواتي",
        "ما", "من", "ماذا", "لماذا", "متي", "اين", "كيف", "كم", "اي",
        "ايها",
        // prepositions
        "في", "الي", "علي", "عن", "مع", "عند", "لدي", "منذ", "حتي",
        "خلال", "فوق", "تحت", "امام", "خلف", "وراء", "بين", "حول", "دون",
        "بدون", "ضد", "عبر", "نحو", "قرب", "بعد", "قبل", "اثناء", "تجاه",
        "حسب", "ضمن",
        // preposition + pronoun fusions
        "فيه", "فيها", "منه", "منها", "منهم", "عليه", "عليها", "عليهم",
        "اليه", "اليها", "عنه", "عنها", "معه", "معها", "عنده", "له",
        "لها", "لهم", "لنا", "لك", "لي", "به", "بها", "بهم", "بك",
        // conjunctions and particles
        "و", "او", "ثم", "بل", "لكن", "اذ", "اذا", "اذن", "ان", "انه",
        "انها", "انهم", "لان", "لانه", "لانها", "كي", "لكي", "لو", "لولا",
        "حين", "حينما", "بينما", "بعدما", "عندما", "كلما", "مثلما",
        "ريثما", "قد", "لقد", "سوف", "لم", "لن", "لا", "ليس", "ليست",
        "ليسوا", "هل", "الا", "غير", "سوي", "يا", "كلا", "كلتا", "كل",
        "بعض", "جميع", "معظم", "نعم", "بلي", "ليت", "لعل", "عسي", "اما",
        "مهما", "حيث", "حيثما", "كذلك", "هكذا", "فقط", "ايضا", "مثل",
        "ذو", "ذات",
        // copular verbs
        "كان", "كانت", "كانوا", "يكون", "تكون", "اصبح", "اصبحت", "صار",
        "صارت", "ظل", "بات", "اضحي", "امسي", "مازال", "لايزال",
    };
    return words;
}

} // namespace qiraa
