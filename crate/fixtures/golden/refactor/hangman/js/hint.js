import {guesses, pick, set_guesses, set_shown, shown} from "./content.js";
function hint() {
  set_guesses(+guesses + 1);
  return pick(1).charAt(0);
}
function reveal(word) {
  set_shown(word.charAt(0) + new Array(word.length).join("_"));
}
export {hint, reveal};
