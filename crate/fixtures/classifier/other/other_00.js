var words = ['apple', 'banana'];
function pick(i) {
  return words[i];
}
