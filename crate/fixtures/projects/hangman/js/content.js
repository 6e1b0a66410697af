var words = ['apple', 'banana', 'cherry'];
var guesses = 0;
var maxGuesses = 6;
var shown = '';

function pick(i) {
  return words[i % words.length];
}

function remaining() {
  return maxGuesses - guesses;
}
