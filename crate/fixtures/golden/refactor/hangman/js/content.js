var words = ["apple", "banana", "cherry"];
var guesses = 0;
var maxGuesses = 6;
var shown = "";
function pick(i) {
  return words[i % words.length];
}
function remaining() {
  return maxGuesses - guesses;
}
function set_guesses(value) {
  guesses = value;
}
function set_shown(value) {
  shown = value;
}
export {guesses, shown, pick, remaining, set_guesses, set_shown};
