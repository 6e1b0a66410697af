if (settings.debug) {
  console.log('debugging');
}
