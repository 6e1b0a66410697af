function init() {
  return 'score';
}
